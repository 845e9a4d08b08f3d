#pragma once

#include <map>
#include <optional>
#include <string_view>

#include "sentibt/evaluation.hpp"
#include "sentibt/series.hpp"

namespace sentibt {

enum class Regime { low, medium, high };

std::string_view regime_name(Regime r);

/// Trailing sample standard deviation of the last `window` returns,
/// annualized by sqrt(periods_per_year), labeling the window's final month.
/// Months without a full contiguous trailing window are absent.
MonthlySeries rolling_volatility(const MonthlySeries& returns, int window = 6,
                                 double periods_per_year = 12.0);

struct RegimeThresholds {
    double t1 = 0.0;  // low/medium boundary
    double t2 = 0.0;  // medium/high boundary
};

/// t1 = v_min + f1 * range, t2 = v_min + f2 * range over the observed
/// volatility values. A degenerate (zero) range is an error.
RegimeThresholds regime_thresholds(const MonthlySeries& vol, double f1 = 0.20, double f2 = 0.50);

struct RegimePartition {
    MonthlySeries vol{"volatility"};
    RegimeThresholds thresholds;
    std::map<MonthKey, Regime> labels;
    std::map<Regime, int> counts;
};

/// low iff v <= t1; medium iff t1 < v <= t2; high iff v > t2.
RegimePartition classify_regimes(const MonthlySeries& vol, RegimeThresholds thresholds);

struct RegimeReport {
    /// Reports keyed by regime; nullopt marks a regime with fewer than 2
    /// realized returns (insufficient data).
    std::map<Regime, std::optional<StrategyReport>> per_regime;
    std::map<Regime, int> months_per_regime;  // realized return months per regime
    int unlabeled_months = 0;                 // return months outside the partition
};

/// Group a path's period returns by the regime of their realization month.
RegimeReport regime_report(const PortfolioPath& path, const MonthlySeries& asset_returns,
                           const RegimePartition& partition, double risk_free_monthly = 0.0);

}  // namespace sentibt
