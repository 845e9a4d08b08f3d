#include "sentibt/strategy.hpp"

#include <cmath>
#include <cstdlib>

#include "sentibt/errors.hpp"

namespace sentibt {

std::string_view origin_name(SignalOrigin o) {
    switch (o) {
        case SignalOrigin::sentiment_only: return "sentiment_only";
        case SignalOrigin::price_based: return "price_based";
        case SignalOrigin::buy_and_hold: return "buy_and_hold";
    }
    return "sentiment_only";
}

SignalSeries sentiment_signal(const MonthlySeries& sentiment) {
    SignalSeries out;
    out.origin = SignalOrigin::sentiment_only;
    for (const auto& [month, score] : sentiment.entries()) {
        int sig = 0;
        if (score > 0.0) sig = 1;
        else if (score < 0.0) sig = -1;
        out.entries[month] = sig;
    }
    return out;
}

int price_signal(double pred_next, double now) {
    if (!(pred_next > 0.0) || !(now > 0.0)) {
        throw ComputeError("price signal requires positive prices, got pred=" +
                           std::to_string(pred_next) + " now=" + std::to_string(now));
    }
    if (pred_next > now) return 1;
    if (pred_next < now) return -1;
    return 0;
}

SignalSeries price_signals(const PredictionSeries& predictions, const MonthlySeries& closes) {
    SignalSeries out;
    out.origin = SignalOrigin::price_based;
    for (const auto& [target, pred] : predictions.entries) {
        auto now = closes.at(target.prev());
        if (!now.has_value()) continue;
        out.entries[target.prev()] = price_signal(pred, *now);
    }
    return out;
}

SignalSeries densify_flat(const SignalSeries& signals, MonthKey first, MonthKey last) {
    SignalSeries out;
    out.origin = signals.origin;
    for (MonthKey m = first; m <= last; m = m.next()) {
        auto it = signals.entries.find(m);
        out.entries[m] = it == signals.entries.end() ? 0 : it->second;
    }
    return out;
}

SignalSeries densify_hold_last(const SignalSeries& signals, MonthKey first, MonthKey last) {
    SignalSeries out;
    out.origin = signals.origin;
    int held = 0;
    for (MonthKey m = first; m <= last; m = m.next()) {
        auto it = signals.entries.find(m);
        if (it != signals.entries.end()) held = it->second;
        out.entries[m] = held;
    }
    return out;
}

SignalSeries buy_and_hold(MonthKey first, MonthKey last) {
    SignalSeries out;
    out.origin = SignalOrigin::buy_and_hold;
    for (MonthKey m = first; m <= last; m = m.next()) out.entries[m] = 1;
    return out;
}

SignalSeries clip_to_returns(const SignalSeries& signals, const MonthlySeries& returns) {
    SignalSeries out;
    out.origin = signals.origin;
    for (const auto& [month, sig] : signals.entries) {
        if (returns.has(month.next())) out.entries[month] = sig;
    }
    return out;
}

double PortfolioPath::final_value() const {
    if (values.empty()) throw ComputeError("empty portfolio path");
    return values.rbegin()->second;
}

PortfolioPath simulate(const SignalSeries& signals, const MonthlySeries& returns,
                       double cost_per_switch) {
    if (signals.empty()) throw ComputeError("cannot simulate an empty signal series");
    if (cost_per_switch < 0.0) throw ComputeError("negative cost_per_switch");

    PortfolioPath path;
    double value = 100.0;
    path.values[signals.entries.begin()->first] = value;

    int prev_signal = 0;
    for (const auto& [month, sig] : signals.entries) {
        if (sig < -1 || sig > 1) {
            throw ComputeError("signal out of range at " + month.str());
        }
        MonthKey realized = month.next();
        auto ret = returns.at(realized);
        if (!ret.has_value()) {
            if (sig != 0) {
                throw ComputeError("no return available for active signal month " + month.str());
            }
            prev_signal = sig;
            continue;
        }
        double strat = sig * *ret - cost_per_switch * std::abs(sig - prev_signal);
        prev_signal = sig;
        if (strat <= -1.0) {
            throw ComputeError("strategy return " + std::to_string(strat) + " at " +
                               realized.str() + " wipes out the portfolio");
        }
        value *= 1.0 + strat;
        path.values[realized] = value;
        path.period_returns.set(realized, strat);
        path.applied_signal[realized] = sig;
    }
    return path;
}

}  // namespace sentibt
