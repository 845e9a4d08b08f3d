#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sentibt/errors.hpp"
#include "sentibt/evaluation.hpp"
#include "sentibt/forecast.hpp"
#include "sentibt/ingest.hpp"
#include "sentibt/regimes.hpp"
#include "sentibt/report_io.hpp"
#include "sentibt/sentiment.hpp"
#include "sentibt/strategy.hpp"
#include "sentibt/topics.hpp"

namespace {

using namespace sentibt;

struct CommonOpts {
    std::string prices_path;
    std::string headlines_path;
    std::string predictions_path;
    std::string out_dir = "out";
    double risk_free = 0.0;
    std::string close_agg = "last";
    std::string feature_agg = "mean";
    bool serial = false;
};

struct BacktestOpts {
    std::string strategy = "sentiment_only";
    std::string source;
    std::vector<std::string> topics;
    std::string event_type;
    double cost_per_switch = 0.0;
    bool hold_last_signal = false;
    bool exclude_empty_months = false;
    std::string forecaster;
    int ar_order = 1;
    double ridge_lambda = 0.01;
    int window = 12;
    int initial_train = 8;
    std::string train_mode = "expanding";
    int train_width = 24;
};

struct RegimeOpts {
    int window = 6;
    std::vector<double> fractions = {0.20, 0.50};
};

struct TopicOpts {
    std::string subset_sizes = "1-11";
    std::string source;
    std::string event_type;
    std::vector<std::string> sources;  // for the comparison matrix
    bool per_topic_events = false;
};

struct GridOpts {
    std::vector<std::string> templates = {"persistence", "ar1", "ar2", "ridge_small",
                                          "ridge_large"};
    std::vector<std::string> feature_sets = {"none"};
    std::vector<int> windows = {1, 3, 6, 12};
    std::vector<std::string> hyper;  // KEY=v1,v2,...
    int initial_train = 8;
    std::string train_mode = "expanding";
    int train_width = 24;
};

struct LoadedData {
    MonthlyTable monthly;
    MonthlySeries returns{"returns"};
    std::vector<HeadlineRecord> headlines;
    std::optional<PredictionSeries> predictions;
};

LoadedData load_inputs(const CommonOpts& common, bool need_prices, bool need_headlines) {
    LoadedData data;
    if (need_prices || !common.prices_path.empty()) {
        if (common.prices_path.empty()) {
            throw UsageError("missing --prices (required for this command)");
        }
        PriceTable table = load_prices(common.prices_path);
        if (table.bars.empty()) throw DataError(common.prices_path + ": no price rows");
        impute_missing(table);
        data.monthly = resample_monthly(table, parse_aggregation(common.close_agg),
                                        parse_aggregation(common.feature_agg));
        if (data.monthly.close.size() >= 2) {
            data.returns = simple_returns(data.monthly.close);
        }
    }
    if (need_headlines || !common.headlines_path.empty()) {
        if (common.headlines_path.empty()) {
            throw UsageError("missing --headlines (required for this command)");
        }
        data.headlines = load_headlines(common.headlines_path);
    }
    if (!common.predictions_path.empty()) {
        data.predictions = load_predictions(common.predictions_path);
    }
    return data;
}

HeadlineFilter build_filter(const std::string& source, const std::vector<std::string>& topics,
                            const std::string& event_type) {
    HeadlineFilter filter;
    if (!source.empty()) filter.sources.insert(source);
    for (const auto& t : topics) filter.topics.insert(parse_topic(t));
    if (!event_type.empty()) filter.event_types.insert(parse_event_type(event_type));
    return filter;
}

void write_outputs(const std::string& out_dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
    for (const auto& [name, content] : files) {
        write_file_atomic((std::filesystem::path(out_dir) / name).string(), content);
    }
}

std::map<std::string, MonthlySeries> forecast_features(const LoadedData& data,
                                                       const std::string& feature_set) {
    std::map<std::string, MonthlySeries> features = data.monthly.features;
    features.insert_or_assign("close", data.monthly.close);
    if (feature_set != "none" && !feature_set.empty()) {
        HeadlineFilter filter;
        if (feature_set != "all") filter.sources.insert(feature_set);
        MonthlySeries scores = monthly_score(data.headlines, filter);
        // Forecaster inputs must be dense; a month without headlines reads
        // as neutral.
        features.insert_or_assign(
            "sentiment", fill_empty_months(scores, data.monthly.close.first_month(),
                                           data.monthly.close.last_month()));
    }
    return features;
}

ForecasterSpec builtin_template(const std::string& name) {
    ForecasterSpec spec;
    spec.name = name;
    if (name == "persistence") {
        spec.family = ForecasterFamily::persistence;
    } else if (name == "ar1") {
        spec.family = ForecasterFamily::ar_ls;
        spec.hyperparams["order"] = 1.0;
    } else if (name == "ar2") {
        spec.family = ForecasterFamily::ar_ls;
        spec.hyperparams["order"] = 2.0;
    } else if (name == "ridge_small") {
        spec.family = ForecasterFamily::ridge_window;
        spec.hyperparams["lambda"] = 0.01;
    } else if (name == "ridge_large") {
        spec.family = ForecasterFamily::ridge_window;
        spec.hyperparams["lambda"] = 1.0;
    } else {
        throw UsageError("unknown grid template '" + name +
                         "' (expected persistence|ar1|ar2|ridge_small|ridge_large)");
    }
    return spec;
}

TrainWindow parse_train_mode(const std::string& s) {
    if (s == "expanding") return TrainWindow::expanding;
    if (s == "fixed") return TrainWindow::fixed;
    throw UsageError("unknown train mode '" + s + "' (expected expanding|fixed)");
}

ordered_json strategy_metadata(const CommonOpts& common, const BacktestOpts& opts) {
    ordered_json meta;
    meta["strategy"] = opts.strategy;
    meta["prices"] = common.prices_path;
    if (!common.headlines_path.empty()) meta["headlines"] = common.headlines_path;
    if (!common.predictions_path.empty()) meta["predictions"] = common.predictions_path;
    if (!opts.source.empty()) meta["source"] = opts.source;
    if (!opts.topics.empty()) meta["topics"] = opts.topics;
    if (!opts.event_type.empty()) meta["event_type"] = opts.event_type;
    meta["risk_free_monthly"] = common.risk_free;
    meta["cost_per_switch"] = opts.cost_per_switch;
    return meta;
}

int run_backtest(const CommonOpts& common, const BacktestOpts& opts) {
    bool needs_headlines = opts.strategy == "sentiment_only" ||
                           (opts.strategy == "combined" && common.predictions_path.empty());
    LoadedData data = load_inputs(common, true, needs_headlines);
    if (data.returns.empty()) {
        throw ComputeError("price series too short to form returns (need >= 2 months)");
    }

    MonthKey first = data.monthly.close.first_month();
    MonthKey last_signal = data.monthly.close.last_month().prev();

    SignalSeries signals;
    ordered_json meta = strategy_metadata(common, opts);

    if (opts.strategy == "buy_and_hold") {
        signals = buy_and_hold(first, last_signal);
    } else if (opts.strategy == "sentiment_only") {
        HeadlineFilter filter = build_filter(opts.source, opts.topics, opts.event_type);
        MonthlySeries scores = monthly_score(data.headlines, filter);
        if (scores.empty()) {
            throw DataError("no headlines match the requested filter; nothing to trade");
        }
        signals = sentiment_signal(scores);
        if (!opts.exclude_empty_months) {
            signals = opts.hold_last_signal ? densify_hold_last(signals, first, last_signal)
                                            : densify_flat(signals, first, last_signal);
        }
    } else if (opts.strategy == "price_based" || opts.strategy == "combined") {
        PredictionSeries preds;
        if (data.predictions.has_value()) {
            preds = *data.predictions;
            meta["forecaster"] = "external";
        } else {
            std::string feature_set = opts.strategy == "combined"
                                          ? (opts.source.empty() ? "all" : opts.source)
                                          : "none";
            ForecasterSpec spec;
            std::string family = opts.forecaster.empty() ? "persistence" : opts.forecaster;
            spec = builtin_template(family == "ar_ls" ? "ar1" : family == "ridge_window"
                                                                    ? "ridge_small"
                                                                    : family);
            if (spec.family == ForecasterFamily::ar_ls) {
                spec.hyperparams["order"] = opts.ar_order;
            }
            if (spec.family == ForecasterFamily::ridge_window) {
                spec.hyperparams["lambda"] = opts.ridge_lambda;
            }
            spec.feature_set = feature_set;
            spec.window_len = opts.window;
            WindowedDataset ds = build_windows(forecast_features(data, feature_set),
                                               data.monthly.close, opts.window);
            WalkForwardResult wf = walk_forward(spec, ds, opts.initial_train,
                                                parse_train_mode(opts.train_mode),
                                                opts.train_width);
            for (const auto& w : wf.warnings) std::cerr << "warning: " << w << "\n";
            preds = std::move(wf.preds);
            meta["forecaster"] = spec.name;
            meta["feature_set"] = feature_set;
            meta["window"] = opts.window;
            meta["initial_train"] = opts.initial_train;
        }
        signals = price_signals(preds, data.monthly.close);
        if (signals.empty()) {
            throw DataError("no prediction month lines up with a price month");
        }
    } else {
        throw UsageError("unknown strategy '" + opts.strategy +
                         "' (expected sentiment_only|price_based|combined|buy_and_hold)");
    }

    signals = clip_to_returns(signals, data.returns);
    if (signals.empty()) {
        throw DataError("no signal month has a realizable next-month return");
    }
    PortfolioPath path = simulate(signals, data.returns, opts.cost_per_switch);
    auto report = build_report(path, data.returns, common.risk_free);

    ordered_json j;
    j["run"] = std::move(meta);
    j["report"] = report.has_value() ? report_json(*report) : ordered_json("insufficient data");
    j["final_value"] = path.final_value();

    write_outputs(common.out_dir, {
        {"report.json", j.dump(2) + "\n"},
        {"portfolio.csv", portfolio_csv(path)},
        {"plot.tsv", plot_tsv(path, data.monthly.close)},
    });

    std::cout << "strategy " << opts.strategy << ": " << path.period_returns.size()
              << " traded months, final value " << fmt_fixed(path.final_value(), 4) << "\n";
    if (report.has_value() && report->sharpe.has_value()) {
        std::cout << "sharpe " << fmt_fixed(report->sharpe->sr, 4) << " (annualized "
                  << fmt_fixed(report->sharpe->sr_annualized, 4) << ")\n";
    }
    std::cout << "wrote report.json, portfolio.csv, plot.tsv to " << common.out_dir << "\n";
    return 0;
}

int run_regimes(const CommonOpts& common, const RegimeOpts& opts) {
    LoadedData data = load_inputs(common, true, false);
    if (data.returns.size() < static_cast<std::size_t>(opts.window)) {
        throw ComputeError("need at least " + std::to_string(opts.window) +
                        " monthly returns for the volatility window");
    }
    if (opts.fractions.size() != 2) {
        throw UsageError("--regime-fractions needs exactly two values");
    }

    MonthlySeries vol = rolling_volatility(data.returns, opts.window);
    RegimeThresholds thresholds = regime_thresholds(vol, opts.fractions[0], opts.fractions[1]);
    RegimePartition partition = classify_regimes(vol, thresholds);

    MonthKey first = data.monthly.close.first_month();
    MonthKey last_signal = data.monthly.close.last_month().prev();

    std::map<std::string, RegimeReport> by_strategy;
    {
        PortfolioPath path = simulate(buy_and_hold(first, last_signal), data.returns);
        by_strategy["buy_and_hold"] =
            regime_report(path, data.returns, partition, common.risk_free);
    }
    if (!common.headlines_path.empty()) {
        MonthlySeries scores = monthly_score(data.headlines, {});
        SignalSeries signals =
            densify_flat(sentiment_signal(scores), first, last_signal);
        PortfolioPath path = simulate(clip_to_returns(signals, data.returns), data.returns);
        by_strategy["sentiment_only"] =
            regime_report(path, data.returns, partition, common.risk_free);
    }
    if (data.predictions.has_value()) {
        SignalSeries signals = price_signals(*data.predictions, data.monthly.close);
        signals = clip_to_returns(signals, data.returns);
        if (!signals.empty()) {
            PortfolioPath path = simulate(signals, data.returns);
            by_strategy["price_based"] =
                regime_report(path, data.returns, partition, common.risk_free);
        }
    }

    write_outputs(common.out_dir, {
        {"volatility_regimes.csv", regime_csv(partition)},
        {"regime_report.json", regime_report_json(partition, by_strategy).dump(2) + "\n"},
        {"regime_table.csv", regime_table_csv(by_strategy)},
    });

    std::cout << "volatility months: " << vol.size() << ", thresholds: "
              << fmt_fixed(thresholds.t1 * 100.0, 2) << "% / "
              << fmt_fixed(thresholds.t2 * 100.0, 2) << "%\n";
    std::cout << "regime months low/medium/high: " << partition.counts.at(Regime::low) << "/"
              << partition.counts.at(Regime::medium) << "/" << partition.counts.at(Regime::high)
              << "\n";
    std::cout << "wrote volatility_regimes.csv, regime_report.json, regime_table.csv to "
              << common.out_dir << "\n";
    return 0;
}

std::pair<int, int> parse_size_range(const std::string& text) {
    auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            int k = std::stoi(text);
            return {k, k};
        }
        return {std::stoi(text.substr(0, dash)), std::stoi(text.substr(dash + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad --subset-sizes '" + text + "' (expected MIN-MAX)");
    }
}

int run_topics(const CommonOpts& common, const TopicOpts& opts) {
    LoadedData data = load_inputs(common, true, true);
    if (data.returns.empty()) {
        throw ComputeError("price series too short to form returns (need >= 2 months)");
    }

    bool any_topic = false;
    for (const auto& h : data.headlines) {
        if (h.topic != Topic::unlabeled) {
            any_topic = true;
            break;
        }
    }
    if (!any_topic) {
        throw DataError("every headline is unlabeled; topic analysis needs a topic column");
    }

    auto [min_size, max_size] = parse_size_range(opts.subset_sizes);
    std::set<std::string> source_filter;
    if (!opts.source.empty()) source_filter.insert(opts.source);
    std::set<EventType> event_filter;
    if (!opts.event_type.empty()) event_filter.insert(parse_event_type(opts.event_type));

    TopicCountCache cache = TopicCountCache::build(data.headlines, source_filter, event_filter);
    if (cache.empty()) {
        throw DataError("no labeled headline matches the requested source/event filter");
    }

    std::uint64_t candidates = subset_candidate_count(kTopicCount, min_size, max_size);
    ExecutionMode mode = common.serial ? ExecutionMode::serial : ExecutionMode::parallel;
    std::vector<SubsetResult> results =
        enumerate_topic_subsets(cache, data.returns, min_size, max_size, common.risk_free, mode);

    std::cout << candidates << " candidates (sizes " << min_size << "-" << max_size << ")\n";
    const SubsetResult& best = results.front();
    auto best_sr = best.sharpe();
    std::cout << "best subset: " << mask_label(best.mask);
    if (best_sr.has_value()) std::cout << " sharpe " << fmt_fixed(*best_sr, 4);
    std::cout << " (" << best.n_months << " months)\n";

    std::vector<std::string> sources = opts.sources;
    if (sources.empty()) {
        std::set<std::string> seen;
        for (const auto& h : data.headlines) seen.insert(h.source);
        sources.assign(seen.begin(), seen.end());
    }

    EventTypeReport events =
        event_type_report(data.headlines, data.returns, common.risk_free, opts.per_topic_events);
    SourceTopicMatrix matrix =
        source_comparison(data.headlines, data.returns, sources, common.risk_free);

    write_outputs(common.out_dir, {
        {"topic_subsets.csv", subsets_csv(results)},
        {"event_type_report.json", event_type_json(events).dump(2) + "\n"},
        {"source_topic_matrix.csv", source_matrix_csv(matrix)},
    });
    std::cout << "wrote topic_subsets.csv, event_type_report.json, source_topic_matrix.csv to "
              << common.out_dir << "\n";
    return 0;
}

int run_grid(const CommonOpts& common, const GridOpts& opts) {
    bool needs_headlines = false;
    for (const auto& fs : opts.feature_sets) {
        if (fs != "none") needs_headlines = true;
    }
    LoadedData data = load_inputs(common, true, needs_headlines);
    if (data.returns.empty()) {
        throw ComputeError("price series too short to form returns (need >= 2 months)");
    }

    GridInputs inputs;
    for (const auto& name : opts.templates) inputs.templates.push_back(builtin_template(name));
    inputs.feature_sets = opts.feature_sets;
    inputs.windows = opts.windows;
    inputs.initial_train = opts.initial_train;
    inputs.mode = parse_train_mode(opts.train_mode);
    inputs.train_width = opts.train_width;
    for (const auto& axis : opts.hyper) {
        auto eq = axis.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= axis.size()) {
            throw UsageError("bad --hyper '" + axis + "' (expected KEY=v1,v2,...)");
        }
        std::string key = axis.substr(0, eq);
        std::vector<double> values;
        std::string rest = axis.substr(eq + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            std::string cell =
                rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw UsageError("bad value '" + cell + "' in --hyper " + key);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        inputs.hyper_grid[key] = std::move(values);
    }
    inputs.dataset_for = [&](const std::string& fs, int window) {
        return build_windows(forecast_features(data, fs), data.monthly.close, window);
    };

    ExecutionMode mode = common.serial ? ExecutionMode::serial : ExecutionMode::parallel;
    GridResult result = grid_search(inputs, mode);

    std::cout << result.total_cells << " cells, " << result.best_per_group.size()
              << " best-per-group rows\n";
    if (!result.best_per_group.empty()) {
        const ForecastRun& top = result.best_per_group.front();
        std::cout << "top: " << top.spec.name << " source=" << top.spec.feature_set
                  << " window=" << top.spec.window_len;
        if (top.metrics.r2.has_value()) std::cout << " r2=" << fmt_fixed(*top.metrics.r2, 4);
        std::cout << " rmse=" << fmt_fixed(top.metrics.rmse, 4) << "\n";
    }

    write_outputs(common.out_dir, {{"grid_results.csv", grid_csv(result)}});
    std::cout << "wrote grid_results.csv to " << common.out_dir << "\n";
    return 0;
}

int run_validate(const CommonOpts& common) {
    if (common.prices_path.empty() && common.headlines_path.empty() &&
        common.predictions_path.empty()) {
        throw UsageError("validate needs at least one of --prices, --headlines, --predictions");
    }
    if (!common.prices_path.empty()) {
        PriceTable table = load_prices(common.prices_path);
        impute_missing(table);
        MonthlyTable monthly = resample_monthly(table, parse_aggregation(common.close_agg),
                                                parse_aggregation(common.feature_agg));
        std::cout << common.prices_path << ": " << table.bars.size() << " daily rows, "
                  << monthly.close.size() << " months, " << table.feature_names.size()
                  << " feature columns\n";
        if (monthly.close.size() >= 2 && monthly.close.contiguous()) {
            MonthlySeries returns = simple_returns(monthly.close);
            std::cout << "  returns: " << returns.size() << " months, "
                      << returns.first_month().str() << " to " << returns.last_month().str()
                      << "\n";
        } else if (!monthly.close.contiguous()) {
            std::cout << "  note: monthly closes have calendar gaps; returns unavailable\n";
        }
    }
    if (!common.headlines_path.empty()) {
        std::vector<HeadlineRecord> headlines = load_headlines(common.headlines_path);
        std::set<std::string> sources;
        int labeled = 0;
        for (const auto& h : headlines) {
            sources.insert(h.source);
            if (h.topic != Topic::unlabeled) ++labeled;
        }
        std::cout << common.headlines_path << ": " << headlines.size() << " headlines, "
                  << sources.size() << " sources, " << labeled << " topic-labeled\n";
    }
    if (!common.predictions_path.empty()) {
        PredictionSeries preds = load_predictions(common.predictions_path);
        std::cout << common.predictions_path << ": " << preds.entries.size()
                  << " predicted months\n";
    }
    std::cout << "inputs valid\n";
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& common) {
    cmd->add_option("--prices", common.prices_path, "Daily price/feature CSV");
    cmd->add_option("--headlines", common.headlines_path, "Labeled headline CSV");
    cmd->add_option("--predictions", common.predictions_path,
                    "Predicted-close CSV (month,predicted_close)");
    cmd->add_option("--out-dir", common.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--risk-free", common.risk_free, "Monthly risk-free rate")
        ->capture_default_str();
    cmd->add_option("--close-agg", common.close_agg, "Monthly close aggregation (last|mean|first)")
        ->capture_default_str();
    cmd->add_option("--feature-agg", common.feature_agg,
                    "Monthly feature aggregation (last|mean|first)")
        ->capture_default_str();
    cmd->add_flag("--serial", common.serial, "Disable internal parallelism");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic monthly backtesting for sentiment and forecast strategies"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI-style config file")
        ->envname("SENTIBT_CONFIG");

    CommonOpts common;
    BacktestOpts backtest_opts;
    RegimeOpts regime_opts;
    TopicOpts topic_opts;
    GridOpts grid_opts;

    CLI::App* backtest = app.add_subcommand("backtest", "Simulate one strategy and report metrics");
    add_common(backtest, common);
    backtest->add_option("--strategy", backtest_opts.strategy,
                         "sentiment_only|price_based|combined|buy_and_hold")
        ->capture_default_str();
    backtest->add_option("--source", backtest_opts.source, "Restrict headlines to one source");
    backtest->add_option("--topics", backtest_opts.topics, "Restrict headlines to these topics")
        ->delimiter(',');
    backtest->add_option("--event-type", backtest_opts.event_type,
                         "Restrict headlines to forward_looking|occurred");
    backtest->add_option("--cost-per-switch", backtest_opts.cost_per_switch,
                         "Linear cost per unit position change")
        ->capture_default_str();
    backtest->add_flag("--hold-last-signal", backtest_opts.hold_last_signal,
                       "Carry the last position through no-news months (default: flat)");
    backtest->add_flag("--exclude-empty-months", backtest_opts.exclude_empty_months,
                       "Drop no-news months from the portfolio instead of going flat");
    backtest->add_option("--forecaster", backtest_opts.forecaster,
                         "persistence|ar1|ar2|ridge_small|ridge_large (price_based/combined)");
    backtest->add_option("--ar-order", backtest_opts.ar_order, "Autoregression order")
        ->capture_default_str();
    backtest->add_option("--ridge-lambda", backtest_opts.ridge_lambda, "Ridge penalty")
        ->capture_default_str();
    backtest->add_option("--window", backtest_opts.window, "Input window length in months")
        ->capture_default_str();
    backtest->add_option("--initial-train", backtest_opts.initial_train,
                         "Walk-forward initial training samples")
        ->capture_default_str();
    backtest->add_option("--train-mode", backtest_opts.train_mode, "expanding|fixed")
        ->capture_default_str();
    backtest->add_option("--train-width", backtest_opts.train_width,
                         "Training window width under fixed mode")
        ->capture_default_str();

    CLI::App* regimes = app.add_subcommand("regimes", "Volatility regimes and per-regime reports");
    add_common(regimes, common);
    regimes->add_option("--regime-window", regime_opts.window, "Rolling volatility window")
        ->capture_default_str();
    regimes->add_option("--regime-fractions", regime_opts.fractions,
                        "Two range fractions for the low/medium and medium/high thresholds")
        ->expected(2);

    CLI::App* topics = app.add_subcommand("topics", "Topic subsets, event types, source matrix");
    add_common(topics, common);
    topics->add_option("--subset-sizes", topic_opts.subset_sizes, "Subset size range MIN-MAX")
        ->capture_default_str();
    topics->add_option("--source", topic_opts.source, "Restrict the subset search to one source");
    topics->add_option("--event-type", topic_opts.event_type,
                       "Restrict the subset search to forward_looking|occurred");
    topics->add_option("--sources", topic_opts.sources,
                       "Sources for the comparison matrix (default: all in data)")
        ->delimiter(',');
    topics->add_flag("--per-topic-events", topic_opts.per_topic_events,
                     "Split the event-type report by topic");

    CLI::App* grid = app.add_subcommand("grid", "Walk-forward grid search over forecasters");
    add_common(grid, common);
    grid->add_option("--templates", grid_opts.templates,
                     "Forecaster templates (persistence|ar1|ar2|ridge_small|ridge_large)")
        ->delimiter(',')
        ->capture_default_str();
    grid->add_option("--feature-sets", grid_opts.feature_sets,
                     "Feature sets: none, all, or a headline source")
        ->delimiter(',')
        ->capture_default_str();
    grid->add_option("--windows", grid_opts.windows, "Input window lengths")
        ->delimiter(',')
        ->capture_default_str();
    grid->add_option("--hyper", grid_opts.hyper,
                     "Extra hyperparameter axis KEY=v1,v2,... (repeatable)");
    grid->add_option("--initial-train", grid_opts.initial_train,
                     "Walk-forward initial training samples")
        ->capture_default_str();
    grid->add_option("--train-mode", grid_opts.train_mode, "expanding|fixed")
        ->capture_default_str();
    grid->add_option("--train-width", grid_opts.train_width, "Training width under fixed mode")
        ->capture_default_str();

    CLI::App* validate = app.add_subcommand("validate", "Schema-check inputs without computing");
    add_common(validate, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(backtest)) return run_backtest(common, backtest_opts);
        if (app.got_subcommand(regimes)) return run_regimes(common, regime_opts);
        if (app.got_subcommand(topics)) return run_topics(common, topic_opts);
        if (app.got_subcommand(grid)) return run_grid(common, grid_opts);
        if (app.got_subcommand(validate)) return run_validate(common);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ComputeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
