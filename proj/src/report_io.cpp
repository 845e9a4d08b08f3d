#include "sentibt/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sentibt/csv.hpp"
#include "sentibt/errors.hpp"

namespace sentibt {

void write_file_atomic(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
    }
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write file: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::string fmt_fixed(double v, int precision) {
    if (v == 0.0) v = 0.0;  // never print "-0"
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

ordered_json report_json(const StrategyReport& report) {
    ordered_json j;
    j["n_months"] = report.n_months;
    j["cumulative_return"] = report.cumulative_return;
    j["mean_return"] = report.mean_return;
    j["stdev_return"] = report.stdev_return;
    if (report.sharpe.has_value()) {
        j["sharpe"] = report.sharpe->sr;
        j["sharpe_se"] = report.sharpe->se;
        j["sharpe_annualized"] = report.sharpe->sr_annualized;
    } else {
        j["sharpe"] = nullptr;
        j["sharpe_se"] = nullptr;
        j["sharpe_annualized"] = nullptr;
    }
    if (report.hits.has_value()) {
        j["hit_rate"] = report.hits->rate;
        j["hits"] = report.hits->hits;
        j["n_active"] = report.hits->n_active;
        j["p_value"] = report.hits->p_value;
    } else {
        j["hit_rate"] = nullptr;
        j["hits"] = nullptr;
        j["n_active"] = nullptr;
        j["p_value"] = nullptr;
    }
    return j;
}

ordered_json report_json_or_marker(const std::optional<StrategyReport>& report) {
    if (!report.has_value()) return "insufficient data";
    return report_json(*report);
}

std::string portfolio_csv(const PortfolioPath& path) {
    std::string out = "month,value,period_return,signal\n";
    for (const auto& [month, value] : path.values) {
        out += month.str();
        out += ',';
        out += fmt_fixed(value, 6);
        out += ',';
        auto ret = path.period_returns.at(month);
        out += ret.has_value() ? fmt_fixed(*ret, 8) : "";
        out += ',';
        auto sig = path.applied_signal.find(month);
        out += sig != path.applied_signal.end() ? std::to_string(sig->second) : "";
        out += '\n';
    }
    return out;
}

std::string plot_tsv(const PortfolioPath& path, const MonthlySeries& prices) {
    std::string out = "month\tportfolio_value\tprice_index\n";
    std::optional<double> base;
    for (const auto& [month, value] : path.values) {
        auto price = prices.at(month);
        if (price.has_value() && !base.has_value()) base = *price;
        out += month.str();
        out += '\t';
        out += fmt_fixed(value, 6);
        out += '\t';
        out += price.has_value() && base.has_value() ? fmt_fixed(100.0 * *price / *base, 6) : "";
        out += '\n';
    }
    return out;
}

std::string sentiment_csv(const MonthlySeries& scores, const MonthlySeries& counts) {
    std::string out = "month,score,n_headlines\n";
    for (const auto& [month, score] : scores.entries()) {
        out += month.str();
        out += ',';
        out += fmt_fixed(score, 6);
        out += ',';
        auto n = counts.at(month);
        out += n.has_value() ? std::to_string(static_cast<long long>(*n)) : "0";
        out += '\n';
    }
    return out;
}

std::string regime_csv(const RegimePartition& partition) {
    std::string out = "month,volatility,regime\n";
    for (const auto& [month, vol] : partition.vol.entries()) {
        out += month.str();
        out += ',';
        out += fmt_fixed(vol, 8);
        out += ',';
        out += regime_name(partition.labels.at(month));
        out += '\n';
    }
    return out;
}

ordered_json regime_report_json(const RegimePartition& partition,
                                const std::map<std::string, RegimeReport>& by_strategy) {
    ordered_json j;
    j["thresholds"]["low_medium"] = partition.thresholds.t1;
    j["thresholds"]["medium_high"] = partition.thresholds.t2;
    for (const auto& [regime, count] : partition.counts) {
        j["month_counts"][std::string(regime_name(regime))] = count;
    }
    for (const auto& [strategy, report] : by_strategy) {
        ordered_json s;
        for (Regime r : {Regime::low, Regime::medium, Regime::high}) {
            auto it = report.per_regime.find(r);
            s[std::string(regime_name(r))] =
                it == report.per_regime.end() ? ordered_json("insufficient data")
                                              : report_json_or_marker(it->second);
        }
        s["unlabeled_months"] = report.unlabeled_months;
        j["strategies"][strategy] = std::move(s);
    }
    return j;
}

std::string regime_table_csv(const std::map<std::string, RegimeReport>& by_strategy) {
    std::string out = "strategy,regime,n_months,sharpe,sharpe_se,sharpe_annualized\n";
    for (const auto& [strategy, report] : by_strategy) {
        for (Regime r : {Regime::low, Regime::medium, Regime::high}) {
            out += strategy;
            out += ',';
            out += regime_name(r);
            out += ',';
            auto it = report.per_regime.find(r);
            const std::optional<StrategyReport>& rep =
                it == report.per_regime.end() ? std::optional<StrategyReport>{} : it->second;
            if (rep.has_value() && rep->sharpe.has_value()) {
                out += std::to_string(rep->n_months);
                out += ',';
                out += fmt_fixed(rep->sharpe->sr, 6);
                out += ',';
                out += fmt_fixed(rep->sharpe->se, 6);
                out += ',';
                out += fmt_fixed(rep->sharpe->sr_annualized, 6);
            } else {
                int n = rep.has_value() ? rep->n_months : 0;
                out += std::to_string(n);
                out += ",,,";
            }
            out += '\n';
        }
    }
    return out;
}

std::string subsets_csv(const std::vector<SubsetResult>& results) {
    std::string out = "rank,subset,sharpe,n_months,cum_return\n";
    int rank = 1;
    for (const auto& r : results) {
        out += std::to_string(rank++);
        out += ',';
        out += csv_escape(mask_label(r.mask));
        out += ',';
        auto sr = r.sharpe();
        out += sr.has_value() ? fmt_fixed(*sr, 6) : "";
        out += ',';
        out += std::to_string(r.n_months);
        out += ',';
        out += r.report.has_value() ? fmt_fixed(r.report->cumulative_return, 6) : "";
        out += '\n';
    }
    return out;
}

ordered_json event_type_json(const EventTypeReport& report) {
    ordered_json j;
    j["forward_looking"] = report.forward_looking_present
                               ? report_json_or_marker(report.forward_looking)
                               : ordered_json("missing");
    j["occurred"] = report.occurred_present ? report_json_or_marker(report.occurred)
                                            : ordered_json("missing");
    if (!report.per_topic.empty()) {
        ordered_json by_topic;
        for (const auto& [topic, pair] : report.per_topic) {
            ordered_json t;
            t["forward_looking"] = report_json_or_marker(pair.first);
            t["occurred"] = report_json_or_marker(pair.second);
            by_topic[std::string(topic_name(topic))] = std::move(t);
        }
        j["per_topic"] = std::move(by_topic);
    }
    return j;
}

std::string source_matrix_csv(const SourceTopicMatrix& matrix) {
    std::string out = "source,topic,sharpe,improvement_pct,n_months,hit_rate\n";
    for (const auto& source : matrix.sources) {
        auto bench = matrix.benchmark.at(source);
        out += csv_escape(source);
        out += ",all,";
        if (bench.has_value() && bench->sharpe.has_value()) {
            out += fmt_fixed(bench->sharpe->sr, 6);
        }
        out += ",,";
        out += bench.has_value() ? std::to_string(bench->n_months) : "0";
        out += ',';
        if (bench.has_value() && bench->hits.has_value()) {
            out += fmt_fixed(bench->hits->rate, 6);
        }
        out += '\n';

        for (Topic t : topic_universe()) {
            const SourceTopicCell& cell = matrix.cells.at(source).at(t);
            out += csv_escape(source);
            out += ',';
            out += topic_name(t);
            out += ',';
            if (cell.report.has_value() && cell.report->sharpe.has_value()) {
                out += fmt_fixed(cell.report->sharpe->sr, 6);
            }
            out += ',';
            if (cell.improvement.has_value()) out += fmt_fixed(*cell.improvement, 2);
            out += ',';
            out += cell.report.has_value() ? std::to_string(cell.report->n_months) : "0";
            out += ',';
            if (cell.report.has_value() && cell.report->hits.has_value()) {
                out += fmt_fixed(cell.report->hits->rate, 6);
            }
            out += '\n';
        }
    }
    return out;
}

std::string grid_csv(const GridResult& result) {
    std::string out = "rank,family,name,source,window,hyperparams,r2,rmse,mae,n,fallbacks\n";
    int rank = 1;
    for (const auto& run : result.best_per_group) {
        out += std::to_string(rank++);
        out += ',';
        out += family_name(run.spec.family);
        out += ',';
        out += csv_escape(run.spec.name);
        out += ',';
        out += csv_escape(run.spec.feature_set);
        out += ',';
        out += std::to_string(run.spec.window_len);
        out += ',';
        std::string hp;
        for (const auto& [k, v] : run.spec.hyperparams) {
            if (!hp.empty()) hp += ' ';
            hp += k + "=" + fmt_fixed(v, 6);
        }
        out += csv_escape(hp);
        out += ',';
        out += run.metrics.r2.has_value() ? fmt_fixed(*run.metrics.r2, 6) : "";
        out += ',';
        out += fmt_fixed(run.metrics.rmse, 6);
        out += ',';
        out += fmt_fixed(run.metrics.mae, 6);
        out += ',';
        out += std::to_string(run.metrics.n);
        out += ',';
        out += std::to_string(run.n_fallbacks);
        out += '\n';
    }
    return out;
}

}  // namespace sentibt
