#pragma once

#include <map>
#include <string_view>

#include "sentibt/forecast.hpp"
#include "sentibt/series.hpp"

namespace sentibt {

enum class SignalOrigin { sentiment_only, price_based, buy_and_hold };

std::string_view origin_name(SignalOrigin o);

/// Month -> position in {-1, 0, +1}. The signal at month t applies to the
/// return realized over t -> t+1. The series may be sparse: a month absent
/// from it takes no position and realizes no strategy return at all.
struct SignalSeries {
    SignalOrigin origin = SignalOrigin::sentiment_only;
    std::map<MonthKey, int> entries;

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
};

/// Position = sign of the sentiment score; sparse input stays sparse.
SignalSeries sentiment_signal(const MonthlySeries& sentiment);

/// Position from a next-month price forecast: sign(pred_next - now),
/// 0 on exact equality. Nonpositive prices are an error.
int price_signal(double pred_next, double now);

/// One signal per predicted month: the prediction for month m yields the
/// position held through m, formed at m-1 against the close at m-1.
/// Predictions without a current close are skipped.
SignalSeries price_signals(const PredictionSeries& predictions, const MonthlySeries& closes);

/// Fill [first, last] so every month carries a position: missing months
/// become flat (0) or carry the last seen position forward.
SignalSeries densify_flat(const SignalSeries& signals, MonthKey first, MonthKey last);
SignalSeries densify_hold_last(const SignalSeries& signals, MonthKey first, MonthKey last);

/// Identically +1 over [first, last].
SignalSeries buy_and_hold(MonthKey first, MonthKey last);

/// Drop signal months whose next-month return is unavailable (pipeline trim
/// for the tail of the sample and for sparse return coverage).
SignalSeries clip_to_returns(const SignalSeries& signals, const MonthlySeries& returns);

struct PortfolioPath {
    /// Portfolio values; the entry at the first signal month is the start
    /// value 100, each later entry is the value after that month's return.
    std::map<MonthKey, double> values;
    /// Realized strategy return keyed by the realization month (t+1).
    MonthlySeries period_returns{"strategy_returns"};
    /// Position that produced each period return, keyed like period_returns.
    std::map<MonthKey, int> applied_signal;

    double final_value() const;
};

/// Compound a signal series against realized returns, starting from 100.
/// Strategy return for t+1 is signal_t * R_{t+1} - cost_per_switch *
/// |signal_t - signal_prev|. An active (nonzero) signal whose next return is
/// missing is an error; a flat month with no return is skipped.
PortfolioPath simulate(const SignalSeries& signals, const MonthlySeries& returns,
                       double cost_per_switch = 0.0);

}  // namespace sentibt
