#include "sentibt/forecast.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sentibt/csv.hpp"
#include "sentibt/errors.hpp"

namespace sentibt {

std::string_view family_name(ForecasterFamily f) {
    switch (f) {
        case ForecasterFamily::persistence: return "persistence";
        case ForecasterFamily::ar_ls: return "ar_ls";
        case ForecasterFamily::ridge_window: return "ridge_window";
        case ForecasterFamily::external: return "external";
    }
    return "persistence";
}

ForecasterFamily parse_family(const std::string& s) {
    if (s == "persistence") return ForecasterFamily::persistence;
    if (s == "ar_ls") return ForecasterFamily::ar_ls;
    if (s == "ridge_window") return ForecasterFamily::ridge_window;
    if (s == "external") return ForecasterFamily::external;
    throw UsageError("unknown forecaster family '" + s + "'");
}

WindowedDataset build_windows(const std::map<std::string, MonthlySeries>& features,
                              const MonthlySeries& target, int window_len) {
    if (window_len < 1) throw ComputeError("window length must be >= 1");
    if (target.empty()) throw ComputeError("empty target series");

    WindowedDataset ds;
    ds.window_len = window_len;
    ds.feature_names.push_back("close");
    for (const auto& [name, _] : features) {
        if (name != "close") ds.feature_names.push_back(name);
    }

    // Common contiguous month span across the target and every feature.
    int lo = target.first_month().index();
    int hi = target.last_month().index();
    for (const auto& [name, series] : features) {
        if (series.empty()) throw ComputeError("feature series '" + name + "' is empty");
        lo = std::max(lo, series.first_month().index());
        hi = std::min(hi, series.last_month().index());
    }
    int span = hi - lo + 1;
    if (span < window_len + 1) {
        throw ComputeError("series of " + std::to_string(std::max(span, 0)) +
                           " overlapping months is shorter than window " +
                           std::to_string(window_len) + " + 1");
    }

    auto value_at = [&](const std::string& name, MonthKey m) -> double {
        const MonthlySeries& s = name == "close" && features.count("close") == 0
                                     ? target
                                     : features.at(name);
        auto v = s.at(m);
        if (!v.has_value()) {
            throw ComputeError("series '" + name + "' has a gap at " + m.str() +
                               " inside the window span");
        }
        return *v;
    };

    for (int i = 0; i + window_len < span; ++i) {
        WindowSample sample;
        MonthKey target_month = MonthKey::from_index(lo + i + window_len);
        sample.target_month = target_month;
        auto t = target.at(target_month);
        if (!t.has_value()) {
            throw ComputeError("target series has a gap at " + target_month.str());
        }
        sample.target = *t;
        sample.inputs.reserve(static_cast<std::size_t>(window_len) * ds.feature_names.size());
        for (int w = 0; w < window_len; ++w) {
            MonthKey m = MonthKey::from_index(lo + i + w);
            for (const auto& name : ds.feature_names) {
                sample.inputs.push_back(value_at(name, m));
            }
        }
        sample.last_close = value_at("close", MonthKey::from_index(lo + i + window_len - 1));
        ds.samples.push_back(std::move(sample));
    }
    return ds;
}

void validate_spec(const ForecasterSpec& spec) {
    if (spec.window_len < 1) throw UsageError("forecaster window length must be >= 1");
    switch (spec.family) {
        case ForecasterFamily::persistence:
            break;
        case ForecasterFamily::ar_ls: {
            double order = spec.hyper("order", 0.0);
            if (order < 1.0 || order != std::floor(order)) {
                throw UsageError("ar_ls requires an integer hyperparameter order >= 1");
            }
            break;
        }
        case ForecasterFamily::ridge_window: {
            if (spec.hyper("lambda", -1.0) < 0.0) {
                throw UsageError("ridge_window requires hyperparameter lambda >= 0");
            }
            break;
        }
        case ForecasterFamily::external:
            if (spec.external_path.empty()) {
                throw UsageError("external forecaster requires a predictions file path");
            }
            break;
    }
}

PredictionSeries parse_predictions(const std::string& text, const std::string& origin) {
    CsvTable csv = parse_csv(text, origin);
    std::size_t month_col = csv.column("month", origin);
    std::size_t pred_col = csv.column("predicted_close", origin);
    PredictionSeries out;
    out.spec.family = ForecasterFamily::external;
    out.spec.name = "external";
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        std::size_t line = csv.row_lines[r];
        MonthKey month(2000, 1);
        try {
            month = MonthKey::parse(csv.rows[r][month_col]);
        } catch (const DataError& e) {
            throw_parse_error(origin, line, e.what());
        }
        const std::string& cell = csv.rows[r][pred_col];
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
        if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
            throw_parse_error(origin, line, "non-numeric predicted_close '" + cell + "'");
        }
        if (!out.entries.emplace(month, value).second) {
            throw_parse_error(origin, line, "duplicate prediction month " + month.str());
        }
    }
    return out;
}

PredictionSeries load_predictions(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    PredictionSeries out = parse_predictions(buf.str(), path);
    out.spec.external_path = path;
    return out;
}

namespace {

// Closes at the last `count` window months of a sample, most recent first.
// Returns false when the window is too short to supply them.
bool trailing_closes(const WindowedDataset& ds, const WindowSample& s, int count,
                     std::vector<double>& out) {
    if (count > ds.window_len) return false;
    out.clear();
    int nf = ds.n_features();
    for (int lag = 0; lag < count; ++lag) {
        int row = ds.window_len - 1 - lag;
        out.push_back(s.inputs[static_cast<std::size_t>(row) * nf]);  // close is feature 0
    }
    return true;
}

std::optional<double> fit_predict_ar(const WindowedDataset& ds, std::size_t lo, std::size_t t,
                                     int order) {
    const std::size_t n_train = t - lo;
    if (n_train < static_cast<std::size_t>(order) + 1) return std::nullopt;

    Eigen::MatrixXd x(n_train, order + 1);
    Eigen::VectorXd y(n_train);
    std::vector<double> lags;
    for (std::size_t s = lo; s < t; ++s) {
        if (!trailing_closes(ds, ds.samples[s], order, lags)) return std::nullopt;
        x(s - lo, 0) = 1.0;
        for (int j = 0; j < order; ++j) x(s - lo, j + 1) = lags[j];
        y(s - lo) = ds.samples[s].target;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < order + 1) return std::nullopt;
    Eigen::VectorXd w = qr.solve(y);

    if (!trailing_closes(ds, ds.samples[t], order, lags)) return std::nullopt;
    double pred = w(0);
    for (int j = 0; j < order; ++j) pred += w(j + 1) * lags[j];
    return std::isfinite(pred) ? std::optional<double>(pred) : std::nullopt;
}

std::optional<double> fit_predict_ridge(const WindowedDataset& ds, std::size_t lo, std::size_t t,
                                        double lambda) {
    const std::size_t n_train = t - lo;
    const std::size_t dim = ds.samples[t].inputs.size() + 1;  // intercept first
    if (n_train < 2) return std::nullopt;

    Eigen::MatrixXd x(n_train, dim);
    Eigen::VectorXd y(n_train);
    for (std::size_t s = lo; s < t; ++s) {
        x(s - lo, 0) = 1.0;
        const auto& in = ds.samples[s].inputs;
        for (std::size_t j = 0; j < in.size(); ++j) x(s - lo, j + 1) = in[j];
        y(s - lo) = ds.samples[s].target;
    }

    Eigen::VectorXd w;
    if (lambda > 0.0) {
        Eigen::MatrixXd gram = x.transpose() * x;
        for (std::size_t j = 1; j < dim; ++j) gram(j, j) += lambda;  // intercept unpenalized
        Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        if (ldlt.info() != Eigen::Success) return std::nullopt;
        w = ldlt.solve(x.transpose() * y);
    } else {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
        if (static_cast<std::size_t>(qr.rank()) < dim) return std::nullopt;
        w = qr.solve(y);
    }
    if (!w.allFinite()) return std::nullopt;

    double pred = w(0);
    const auto& in = ds.samples[t].inputs;
    for (std::size_t j = 0; j < in.size(); ++j) pred += w(j + 1) * in[j];
    return std::isfinite(pred) ? std::optional<double>(pred) : std::nullopt;
}

}  // namespace

WalkForwardResult walk_forward(const ForecasterSpec& spec, const WindowedDataset& dataset,
                               int initial_train, TrainWindow mode, int train_width) {
    validate_spec(spec);
    if (dataset.empty()) throw ComputeError("walk-forward requires a non-empty dataset");
    if (initial_train < 1) throw ComputeError("initial_train must be >= 1");
    if (mode == TrainWindow::fixed && train_width < 1) {
        throw ComputeError("fixed training mode requires train_width >= 1");
    }

    WalkForwardResult result;
    result.preds.spec = spec;

    if (spec.family == ForecasterFamily::external) {
        // Replay: emit the file's value for every sample month it covers.
        PredictionSeries file = load_predictions(spec.external_path);
        for (const auto& sample : dataset.samples) {
            auto it = file.entries.find(sample.target_month);
            if (it != file.entries.end()) {
                result.preds.entries[sample.target_month] = it->second;
            }
        }
        return result;
    }

    const auto n = dataset.samples.size();
    for (std::size_t t = initial_train; t < n; ++t) {
        std::size_t lo = 0;
        if (mode == TrainWindow::fixed && t > static_cast<std::size_t>(train_width)) {
            lo = t - train_width;
        }
        std::optional<double> pred;
        switch (spec.family) {
            case ForecasterFamily::persistence:
                pred = dataset.samples[t].last_close;
                break;
            case ForecasterFamily::ar_ls:
                pred = fit_predict_ar(dataset, lo, t, static_cast<int>(spec.hyper("order", 1.0)));
                break;
            case ForecasterFamily::ridge_window:
                pred = fit_predict_ridge(dataset, lo, t, spec.hyper("lambda", 0.0));
                break;
            case ForecasterFamily::external:
                break;  // handled above
        }
        MonthKey month = dataset.samples[t].target_month;
        if (!pred.has_value()) {
            pred = dataset.samples[t].last_close;
            ++result.n_fallbacks;
            result.warnings.push_back("degenerate fit at " + month.str() +
                                      "; fell back to persistence");
        }
        result.preds.entries[month] = *pred;
    }
    return result;
}

PointMetrics point_metrics(const MonthlySeries& truth, const PredictionSeries& pred) {
    std::vector<double> y;
    std::vector<double> yhat;
    for (const auto& [month, p] : pred.entries) {
        auto t = truth.at(month);
        if (!t.has_value()) continue;
        y.push_back(*t);
        yhat.push_back(p);
    }
    if (y.size() < 2) {
        throw ComputeError("point metrics need at least 2 overlapping months, got " +
                           std::to_string(y.size()));
    }

    PointMetrics m;
    m.n = static_cast<int>(y.size());
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());

    double ss_res = 0.0;
    double ss_tot = 0.0;
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double e = y[i] - yhat[i];
        ss_res += e * e;
        ss_tot += (y[i] - mean) * (y[i] - mean);
        abs_sum += std::abs(e);
    }
    m.rmse = std::sqrt(ss_res / static_cast<double>(y.size()));
    m.mae = abs_sum / static_cast<double>(y.size());
    if (ss_tot > 0.0) m.r2 = 1.0 - ss_res / ss_tot;
    return m;
}

namespace {

int compare_hyperparams(const std::map<std::string, double>& a,
                        const std::map<std::string, double>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.end()) return 1;
    if (ib != b.end()) return -1;
    return 0;
}

}  // namespace

bool forecast_run_better(const ForecastRun& a, const ForecastRun& b) {
    bool a_has = a.metrics.r2.has_value();
    bool b_has = b.metrics.r2.has_value();
    if (a_has != b_has) return a_has;
    if (a_has && *a.metrics.r2 != *b.metrics.r2) return *a.metrics.r2 > *b.metrics.r2;
    if (a.metrics.rmse != b.metrics.rmse) return a.metrics.rmse < b.metrics.rmse;
    int h = compare_hyperparams(a.spec.hyperparams, b.spec.hyperparams);
    if (h != 0) return h < 0;
    if (a.spec.name != b.spec.name) return a.spec.name < b.spec.name;
    if (a.spec.feature_set != b.spec.feature_set) return a.spec.feature_set < b.spec.feature_set;
    return a.spec.window_len < b.spec.window_len;
}

GridResult grid_search(const GridInputs& inputs, ExecutionMode mode) {
    if (inputs.templates.empty() || inputs.feature_sets.empty() || inputs.windows.empty()) {
        throw UsageError("grid search requires at least one template, feature set, and window");
    }
    for (const auto& [key, values] : inputs.hyper_grid) {
        if (values.empty()) throw UsageError("empty hyperparameter axis '" + key + "'");
    }
    if (!inputs.dataset_for) throw UsageError("grid search requires a dataset builder");

    // Cartesian product over the extra hyperparameter axes, in key order.
    std::vector<std::map<std::string, double>> hyper_points{{}};
    for (const auto& [key, values] : inputs.hyper_grid) {
        std::vector<std::map<std::string, double>> next;
        next.reserve(hyper_points.size() * values.size());
        for (const auto& point : hyper_points) {
            for (double v : values) {
                auto p = point;
                p[key] = v;
                next.push_back(std::move(p));
            }
        }
        hyper_points = std::move(next);
    }

    for (const auto& tmpl : inputs.templates) validate_spec(tmpl);

    // Datasets depend only on (feature_set, window); build them up front so
    // the parallel cell loop reads shared immutable state.
    std::map<std::pair<std::string, int>, WindowedDataset> datasets;
    std::map<std::pair<std::string, int>, MonthlySeries> truths;
    for (const auto& fs : inputs.feature_sets) {
        for (int w : inputs.windows) {
            auto key = std::make_pair(fs, w);
            WindowedDataset ds = inputs.dataset_for(fs, w);
            MonthlySeries truth("close");
            for (const auto& s : ds.samples) truth.set(s.target_month, s.target);
            datasets.emplace(key, std::move(ds));
            truths.emplace(key, std::move(truth));
        }
    }

    std::vector<ForecasterSpec> cells;
    cells.reserve(inputs.templates.size() * inputs.feature_sets.size() * inputs.windows.size() *
                  hyper_points.size());
    for (const auto& tmpl : inputs.templates) {
        for (const auto& fs : inputs.feature_sets) {
            for (int w : inputs.windows) {
                for (const auto& point : hyper_points) {
                    ForecasterSpec spec = tmpl;
                    spec.feature_set = fs;
                    spec.window_len = w;
                    for (const auto& [k, v] : point) spec.hyperparams[k] = v;
                    cells.push_back(std::move(spec));
                }
            }
        }
    }

    std::vector<ForecastRun> runs(cells.size());
    std::vector<std::string> cell_errors(cells.size());
    auto evaluate = [&](std::size_t i) {
        try {
            const ForecasterSpec& spec = cells[i];
            auto key = std::make_pair(spec.feature_set, spec.window_len);
            const WindowedDataset& ds = datasets.at(key);
            WalkForwardResult wf =
                walk_forward(spec, ds, inputs.initial_train, inputs.mode, inputs.train_width);
            ForecastRun run;
            run.spec = spec;
            run.n_fallbacks = wf.n_fallbacks;
            if (wf.preds.entries.size() < 2) {
                // Too few predictions to score; rank the cell last.
                run.metrics.r2 = std::nullopt;
                run.metrics.rmse = std::numeric_limits<double>::infinity();
                run.metrics.mae = std::numeric_limits<double>::infinity();
                run.metrics.n = static_cast<int>(wf.preds.entries.size());
            } else {
                run.metrics = point_metrics(truths.at(key), wf.preds);
            }
            runs[i] = std::move(run);
        } catch (const std::exception& e) {
            cell_errors[i] = e.what();
        }
    };

    if (mode == ExecutionMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(cells.size()); ++i) {
            evaluate(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < cells.size(); ++i) evaluate(i);
    }
    for (std::size_t i = 0; i < cell_errors.size(); ++i) {
        if (!cell_errors[i].empty()) {
            throw ComputeError("grid cell " + std::to_string(i) + " failed: " + cell_errors[i]);
        }
    }

    // Best cell per (template name, feature_set, window) group.
    std::map<std::tuple<std::string, std::string, int>, std::size_t> best;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        auto key = std::make_tuple(runs[i].spec.name, runs[i].spec.feature_set,
                                   runs[i].spec.window_len);
        auto it = best.find(key);
        if (it == best.end() || forecast_run_better(runs[i], runs[it->second])) {
            best[key] = i;
        }
    }

    GridResult result;
    result.total_cells = cells.size();
    result.best_per_group.reserve(best.size());
    for (const auto& [_, idx] : best) result.best_per_group.push_back(runs[idx]);
    std::sort(result.best_per_group.begin(), result.best_per_group.end(), forecast_run_better);
    return result;
}

}  // namespace sentibt
