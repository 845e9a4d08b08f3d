#include "sentibt/regimes.hpp"

#include <cmath>
#include <vector>

#include "sentibt/errors.hpp"

namespace sentibt {

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::low: return "low";
        case Regime::medium: return "medium";
        case Regime::high: return "high";
    }
    return "low";
}

MonthlySeries rolling_volatility(const MonthlySeries& returns, int window,
                                 double periods_per_year) {
    if (window < 2) throw UsageError("volatility window must be >= 2");
    MonthlySeries out("volatility");
    if (returns.size() < static_cast<std::size_t>(window)) return out;

    const double annualize = std::sqrt(periods_per_year);
    std::vector<MonthKey> months = returns.months();
    std::vector<double> values = returns.values();
    for (std::size_t i = window - 1; i < months.size(); ++i) {
        // The trailing window must be contiguous in calendar months.
        if (months[i].index() - months[i - (window - 1)].index() != window - 1) continue;
        double mean = 0.0;
        for (std::size_t j = i + 1 - window; j <= i; ++j) mean += values[j];
        mean /= window;
        double ss = 0.0;
        for (std::size_t j = i + 1 - window; j <= i; ++j) {
            ss += (values[j] - mean) * (values[j] - mean);
        }
        out.set(months[i], std::sqrt(ss / (window - 1)) * annualize);
    }
    return out;
}

RegimeThresholds regime_thresholds(const MonthlySeries& vol, double f1, double f2) {
    if (vol.size() < 2) throw ComputeError("thresholds need at least 2 volatility values");
    if (!(f1 < f2)) throw UsageError("threshold fractions must satisfy f1 < f2");
    double vmin = vol.entries().begin()->second;
    double vmax = vmin;
    for (const auto& [_, v] : vol.entries()) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (vmax == vmin) {
        throw ComputeError("degenerate volatility range (all values equal " +
                           std::to_string(vmin) + ")");
    }
    RegimeThresholds t;
    t.t1 = vmin + f1 * (vmax - vmin);
    t.t2 = vmin + f2 * (vmax - vmin);
    return t;
}

RegimePartition classify_regimes(const MonthlySeries& vol, RegimeThresholds thresholds) {
    if (!(thresholds.t1 < thresholds.t2)) {
        throw ComputeError("invalid thresholds: t1 must be < t2");
    }
    RegimePartition part;
    part.vol = vol;
    part.thresholds = thresholds;
    part.counts = {{Regime::low, 0}, {Regime::medium, 0}, {Regime::high, 0}};
    for (const auto& [month, v] : vol.entries()) {
        Regime r = v <= thresholds.t1 ? Regime::low
                   : v <= thresholds.t2 ? Regime::medium
                                        : Regime::high;
        part.labels[month] = r;
        ++part.counts[r];
    }
    return part;
}

RegimeReport regime_report(const PortfolioPath& path, const MonthlySeries& asset_returns,
                           const RegimePartition& partition, double risk_free_monthly) {
    std::map<Regime, std::vector<double>> returns_by_regime;
    std::map<Regime, std::vector<std::pair<int, double>>> pairs_by_regime;
    RegimeReport report;
    report.months_per_regime = {{Regime::low, 0}, {Regime::medium, 0}, {Regime::high, 0}};

    for (const auto& [month, strat_ret] : path.period_returns.entries()) {
        auto it = partition.labels.find(month);
        if (it == partition.labels.end()) {
            ++report.unlabeled_months;
            continue;
        }
        Regime r = it->second;
        returns_by_regime[r].push_back(strat_ret);
        ++report.months_per_regime[r];
        auto sig = path.applied_signal.find(month);
        auto asset = asset_returns.at(month);
        if (sig != path.applied_signal.end() && asset.has_value()) {
            pairs_by_regime[r].emplace_back(sig->second, *asset);
        }
    }

    for (Regime r : {Regime::low, Regime::medium, Regime::high}) {
        report.per_regime[r] =
            report_from_returns(returns_by_regime[r], pairs_by_regime[r], risk_free_monthly);
    }
    return report;
}

}  // namespace sentibt
