#include "sentibt/evaluation.hpp"

#include <cmath>

#include "sentibt/errors.hpp"

namespace sentibt {

double cumulative_return(const std::vector<double>& period_returns) {
    if (period_returns.empty()) {
        throw ComputeError("cumulative return needs at least one period");
    }
    double acc = 1.0;
    for (double r : period_returns) {
        if (r <= -1.0) {
            throw ComputeError("period return " + std::to_string(r) +
                               " <= -100% makes compounding undefined");
        }
        acc *= 1.0 + r;
    }
    return acc - 1.0;
}

double cumulative_return(const MonthlySeries& period_returns) {
    return cumulative_return(period_returns.values());
}

namespace {

std::pair<double, double> mean_and_sample_stdev(const std::vector<double>& xs) {
    const auto n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    double stdev = std::sqrt(ss / (n - 1.0));
    return {mean, stdev};
}

}  // namespace

std::optional<SharpeResult> sharpe(const std::vector<double>& period_returns,
                                   double risk_free_monthly) {
    if (period_returns.size() < 2) return std::nullopt;
    auto [mean, stdev] = mean_and_sample_stdev(period_returns);
    if (stdev == 0.0) return std::nullopt;
    SharpeResult r;
    r.n = static_cast<int>(period_returns.size());
    r.mean = mean;
    r.stdev = stdev;
    r.sr = (mean - risk_free_monthly) / stdev;
    r.se = std::sqrt((1.0 + r.sr * r.sr / 2.0) / static_cast<double>(r.n));
    r.sr_annualized = r.sr * std::sqrt(12.0);
    return r;
}

std::optional<SharpeResult> sharpe(const MonthlySeries& period_returns,
                                   double risk_free_monthly) {
    return sharpe(period_returns.values(), risk_free_monthly);
}

double binomial_two_sided_pvalue(int k, int n) {
    if (n < 1 || k < 0 || k > n) {
        throw ComputeError("invalid binomial test arguments k=" + std::to_string(k) +
                           " n=" + std::to_string(n));
    }
    // At p = 1/2 the pmf is symmetric and unimodal, so outcomes at least as
    // extreme as k are exactly those j with min(j, n-j) <= min(k, n-k).
    int m = std::min(k, n - k);
    if (2 * m == n) return 1.0;

    long double pmf = std::pow(0.5L, static_cast<long double>(n));  // P(X = 0)
    long double cdf = pmf;
    for (int j = 1; j <= m; ++j) {
        pmf *= static_cast<long double>(n - j + 1) / static_cast<long double>(j);
        cdf += pmf;
    }
    long double p = 2.0L * cdf;
    if (p > 1.0L) p = 1.0L;
    return static_cast<double>(p);
}

HitRateResult hit_rate(const SignalSeries& signals, const MonthlySeries& returns) {
    std::vector<std::pair<int, double>> pairs;
    for (const auto& [month, sig] : signals.entries) {
        if (sig == 0) continue;
        auto ret = returns.at(month.next());
        if (!ret.has_value()) continue;
        pairs.emplace_back(sig, *ret);
    }
    auto result = hit_rate(pairs);
    if (!result.has_value()) {
        throw ComputeError("hit rate needs at least one active month with a realized return");
    }
    return *result;
}

std::optional<HitRateResult> hit_rate(
    const std::vector<std::pair<int, double>>& signal_return_pairs) {
    HitRateResult r;
    for (const auto& [sig, ret] : signal_return_pairs) {
        if (sig == 0) continue;
        ++r.n_active;
        // A zero return is a miss: the direction call was neither confirmed
        // nor profitable.
        if ((sig > 0 && ret > 0.0) || (sig < 0 && ret < 0.0)) ++r.hits;
    }
    if (r.n_active == 0) return std::nullopt;
    r.rate = static_cast<double>(r.hits) / static_cast<double>(r.n_active);
    r.p_value = binomial_two_sided_pvalue(r.hits, r.n_active);
    return r;
}

std::optional<StrategyReport> report_from_returns(
    const std::vector<double>& period_returns,
    const std::vector<std::pair<int, double>>& signal_return_pairs, double risk_free_monthly) {
    if (period_returns.size() < 2) return std::nullopt;
    StrategyReport rep;
    rep.n_months = static_cast<int>(period_returns.size());
    rep.cumulative_return = cumulative_return(period_returns);
    auto [mean, stdev] = mean_and_sample_stdev(period_returns);
    rep.mean_return = mean;
    rep.stdev_return = stdev;
    rep.sharpe = sharpe(period_returns, risk_free_monthly);
    rep.hits = hit_rate(signal_return_pairs);
    return rep;
}

std::optional<StrategyReport> build_report(const PortfolioPath& path,
                                           const MonthlySeries& asset_returns,
                                           double risk_free_monthly) {
    std::vector<std::pair<int, double>> pairs;
    for (const auto& [month, sig] : path.applied_signal) {
        auto ret = asset_returns.at(month);
        if (ret.has_value()) pairs.emplace_back(sig, *ret);
    }
    return report_from_returns(path.period_returns.values(), pairs, risk_free_monthly);
}

}  // namespace sentibt
