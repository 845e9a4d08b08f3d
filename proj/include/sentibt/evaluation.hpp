#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sentibt/series.hpp"
#include "sentibt/strategy.hpp"

namespace sentibt {

/// prod(1 + R) - 1. Any R <= -1 is an error (compounding is undefined past
/// a wipeout).
double cumulative_return(const std::vector<double>& period_returns);
double cumulative_return(const MonthlySeries& period_returns);

struct SharpeResult {
    double sr = 0.0;          // monthly
    double se = 0.0;          // sqrt((1 + SR^2/2) / n)
    double sr_annualized = 0.0;  // sr * sqrt(12)
    double mean = 0.0;
    double stdev = 0.0;       // sample (n-1)
    int n = 0;
};

/// Nullopt when fewer than 2 returns or the sample deviation is 0.
std::optional<SharpeResult> sharpe(const std::vector<double>& period_returns,
                                   double risk_free_monthly = 0.0);
std::optional<SharpeResult> sharpe(const MonthlySeries& period_returns,
                                   double risk_free_monthly = 0.0);

/// Two-sided exact binomial test of k successes in n trials at p = 1/2.
double binomial_two_sided_pvalue(int k, int n);

struct HitRateResult {
    double rate = 0.0;
    int hits = 0;
    int n_active = 0;
    double p_value = 1.0;
};

/// Directional accuracy over months with a nonzero signal and an available
/// next-month return. A zero realized return counts as a miss.
HitRateResult hit_rate(const SignalSeries& signals, const MonthlySeries& returns);

/// Hit rate over explicit (signal, realized return) pairs; zero signals are
/// skipped. Nullopt when no active pair exists.
std::optional<HitRateResult> hit_rate(const std::vector<std::pair<int, double>>& signal_return_pairs);

struct StrategyReport {
    int n_months = 0;  // number of realized period returns
    double cumulative_return = 0.0;
    double mean_return = 0.0;
    double stdev_return = 0.0;  // sample; 0 when n < 2
    std::optional<SharpeResult> sharpe;
    std::optional<HitRateResult> hits;
};

/// Report over explicit period returns plus the (signal, return) pairs that
/// produced them. Nullopt when fewer than 2 period returns exist.
std::optional<StrategyReport> report_from_returns(
    const std::vector<double>& period_returns,
    const std::vector<std::pair<int, double>>& signal_return_pairs, double risk_free_monthly);

/// Report for a simulated path; hit rate is computed from the positions the
/// path actually applied against the underlying asset returns.
std::optional<StrategyReport> build_report(const PortfolioPath& path,
                                           const MonthlySeries& asset_returns,
                                           double risk_free_monthly = 0.0);

}  // namespace sentibt
