#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "sentibt/errors.hpp"
#include "sentibt/ingest.hpp"
#include "sentibt/strategy.hpp"

using namespace sentibt;
using namespace sentibt::testing;

TEST_CASE("sentiment signal takes the sign of the score") {
    MonthlySeries sent("s");
    sent.set(MonthKey(2021, 1), 0.4);
    sent.set(MonthKey(2021, 2), -1.0);
    sent.set(MonthKey(2021, 3), 0.0);
    SignalSeries sig = sentiment_signal(sent);
    CHECK(sig.entries.at(MonthKey(2021, 1)) == 1);
    CHECK(sig.entries.at(MonthKey(2021, 2)) == -1);
    CHECK(sig.entries.at(MonthKey(2021, 3)) == 0);
    CHECK(sig.origin == SignalOrigin::sentiment_only);
}

TEST_CASE("price signal compares forecast to current close") {
    CHECK(price_signal(1899.57, 1940.50) == -1);
    CHECK(price_signal(3088.49, 3052.88) == 1);
    CHECK(price_signal(100.0, 100.0) == 0);
    CHECK_THROWS_AS(price_signal(-1.0, 100.0), ComputeError);
    CHECK_THROWS_AS(price_signal(100.0, 0.0), ComputeError);
}

TEST_CASE("densify fills missing months flat or carries the last position") {
    SignalSeries sparse;
    sparse.entries[MonthKey(2021, 1)] = 1;
    sparse.entries[MonthKey(2021, 4)] = -1;
    SignalSeries flat = densify_flat(sparse, MonthKey(2021, 1), MonthKey(2021, 5));
    CHECK(flat.entries.size() == 5);
    CHECK(flat.entries.at(MonthKey(2021, 2)) == 0);
    CHECK(flat.entries.at(MonthKey(2021, 5)) == 0);
    SignalSeries held = densify_hold_last(sparse, MonthKey(2021, 1), MonthKey(2021, 5));
    CHECK(held.entries.at(MonthKey(2021, 2)) == 1);
    CHECK(held.entries.at(MonthKey(2021, 3)) == 1);
    CHECK(held.entries.at(MonthKey(2021, 5)) == -1);
}

TEST_CASE("a short position profits from a fall") {
    SignalSeries sig;
    sig.entries[MonthKey(2020, 2)] = -1;
    MonthlySeries returns("r");
    returns.set(MonthKey(2020, 3), -0.0933);
    PortfolioPath path = simulate(sig, returns);
    CHECK(*path.period_returns.at(MonthKey(2020, 3)) == doctest::Approx(0.0933));
    CHECK(path.final_value() == doctest::Approx(109.33));
}

TEST_CASE("flat signals hold value constant") {
    SignalSeries sig;
    for (int m = 1; m <= 5; ++m) sig.entries[MonthKey(2021, m)] = 0;
    MonthlySeries returns = make_series(MonthKey(2021, 2), {0.1, -0.2, 0.3, 0.05, 0.0}, "r");
    PortfolioPath path = simulate(sig, returns);
    CHECK(path.final_value() == doctest::Approx(100.0).epsilon(1e-15));
    for (double r : path.period_returns.values()) CHECK(r == 0.0);
}

TEST_CASE("hand-compounded two-month long path") {
    SignalSeries sig;
    sig.entries[MonthKey(2021, 1)] = 1;
    sig.entries[MonthKey(2021, 2)] = 1;
    MonthlySeries returns = make_series(MonthKey(2021, 2), {0.10, -0.05}, "r");
    PortfolioPath path = simulate(sig, returns);
    CHECK(path.values.at(MonthKey(2021, 2)) == doctest::Approx(110.0));
    CHECK(path.final_value() == doctest::Approx(104.5));
}

TEST_CASE("missing return under an active signal is an error") {
    SignalSeries sig;
    sig.entries[MonthKey(2021, 1)] = 1;
    MonthlySeries returns("r");  // empty
    CHECK_THROWS_AS(simulate(sig, returns), ComputeError);
}

TEST_CASE("clip_to_returns drops unrealizable trailing months") {
    SignalSeries sig;
    sig.entries[MonthKey(2021, 1)] = 1;
    sig.entries[MonthKey(2021, 2)] = -1;
    MonthlySeries returns("r");
    returns.set(MonthKey(2021, 2), 0.05);
    SignalSeries clipped = clip_to_returns(sig, returns);
    CHECK(clipped.entries.size() == 1);
    CHECK(clipped.entries.count(MonthKey(2021, 1)) == 1);
}

TEST_CASE("negating signals negates every period return at zero cost") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> pick(-1, 1);
    SignalSeries sig;
    MonthlySeries returns("r");
    MonthKey m(2015, 1);
    for (int i = 0; i < 60; ++i) {
        sig.entries[m] = pick(rng);
        returns.set(m.next(), random_returns(rng, 1)[0]);
        m = m.next();
    }
    PortfolioPath base = simulate(sig, returns);
    SignalSeries negated = sig;
    for (auto& [_, s] : negated.entries) s = -s;
    PortfolioPath mirrored = simulate(negated, returns);
    REQUIRE(base.period_returns.size() == mirrored.period_returns.size());
    auto it = mirrored.period_returns.entries().begin();
    for (const auto& [month, r] : base.period_returns.entries()) {
        CHECK(it->second == doctest::Approx(-r).epsilon(1e-15));
        ++it;
    }
}

TEST_CASE("buy and hold reproduces the normalized price path") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> step(-0.05, 0.06);
    MonthlySeries prices("p");
    double p = 1700.0;
    MonthKey m(2010, 1);
    for (int i = 0; i < 100; ++i) {
        prices.set(m, p);
        p *= 1.0 + step(rng);
        m = m.next();
    }
    MonthlySeries returns = simple_returns(prices);
    SignalSeries bh = buy_and_hold(prices.first_month(), prices.last_month().prev());
    PortfolioPath path = simulate(bh, returns);
    double p0 = prices.value(prices.first_month());
    for (const auto& [month, value] : path.values) {
        CHECK(value ==
              doctest::Approx(100.0 * prices.value(month) / p0).epsilon(1e-12));
    }
}

TEST_CASE("switch costs are charged on position changes") {
    SignalSeries sig;
    sig.entries[MonthKey(2021, 1)] = 1;   // switch 0 -> 1: cost 1c
    sig.entries[MonthKey(2021, 2)] = -1;  // switch 1 -> -1: cost 2c
    sig.entries[MonthKey(2021, 3)] = -1;  // no switch
    MonthlySeries returns = make_series(MonthKey(2021, 2), {0.10, 0.10, 0.10}, "r");
    double c = 0.001;
    PortfolioPath path = simulate(sig, returns, c);
    CHECK(*path.period_returns.at(MonthKey(2021, 2)) == doctest::Approx(0.10 - c));
    CHECK(*path.period_returns.at(MonthKey(2021, 3)) == doctest::Approx(-0.10 - 2 * c));
    CHECK(*path.period_returns.at(MonthKey(2021, 4)) == doctest::Approx(-0.10));
}

TEST_CASE("sparse signal series skips excluded months entirely") {
    SignalSeries sig;
    sig.entries[MonthKey(2021, 1)] = 1;
    sig.entries[MonthKey(2021, 3)] = 1;  // February excluded
    MonthlySeries returns = make_series(MonthKey(2021, 2), {0.10, -0.50, 0.20}, "r");
    PortfolioPath path = simulate(sig, returns);
    // The -50% March return never touches the portfolio.
    CHECK(path.final_value() == doctest::Approx(100.0 * 1.10 * 1.20));
    CHECK(path.period_returns.size() == 2);
    CHECK_FALSE(path.period_returns.has(MonthKey(2021, 3)));
}

TEST_CASE("signals from a prediction series line up one month earlier") {
    PredictionSeries preds;
    preds.entries[MonthKey(2022, 2)] = 1899.57;
    preds.entries[MonthKey(2022, 4)] = 3088.49;
    MonthlySeries closes("close");
    closes.set(MonthKey(2022, 1), 1940.50);
    closes.set(MonthKey(2022, 3), 3052.88);
    SignalSeries sig = price_signals(preds, closes);
    CHECK(sig.entries.at(MonthKey(2022, 1)) == -1);
    CHECK(sig.entries.at(MonthKey(2022, 3)) == 1);
    CHECK(sig.origin == SignalOrigin::price_based);
}
