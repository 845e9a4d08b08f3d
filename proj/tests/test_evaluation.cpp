#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sentibt/errors.hpp"
#include "sentibt/evaluation.hpp"
#include "sentibt/strategy.hpp"

using namespace sentibt;
using sentibt::testing::oracle_binomial_two_sided;
using sentibt::testing::oracle_cumulative_return;
using sentibt::testing::oracle_sharpe;
using sentibt::testing::random_returns;

TEST_CASE("cumulative return compounds simple returns") {
    CHECK(cumulative_return({0.10, -0.05}) == doctest::Approx(0.045).epsilon(1e-12));
    CHECK(cumulative_return({0.0933}) == doctest::Approx(0.0933).epsilon(1e-12));
    CHECK(cumulative_return({0.0, 0.0, 0.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(cumulative_return(std::vector<double>{}), ComputeError);
}

TEST_CASE("cumulative return rejects a total-loss period") {
    CHECK_THROWS_AS(cumulative_return({0.05, -1.0}), ComputeError);
    CHECK_THROWS_AS(cumulative_return({-1.5}), ComputeError);
}

TEST_CASE("sharpe ratio on a frozen vector") {
    std::vector<double> rs{0.02, -0.01, 0.03, 0.00};
    auto sr = sharpe(rs, 0.0);
    REQUIRE(sr.has_value());
    // mean 0.01, sample stdev sqrt(nnn)... frozen from a hand calculation
    CHECK(sr->mean == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(sr->stdev == doctest::Approx(0.0182574186).epsilon(1e-8));
    CHECK(sr->sr == doctest::Approx(0.5477225575).epsilon(1e-8));
    CHECK(sr->sr_annualized == doctest::Approx(0.5477225575 * std::sqrt(12.0)).epsilon(1e-8));
    CHECK(sr->n == 4);
}

TEST_CASE("sharpe standard error uses the asymptotic formula") {
    // SE = sqrt((1 + SR^2/2) / n); freeze SR = 1, n = 100.
    std::vector<double> rs;
    std::mt19937 rng(7);
    // Construct any series, then check the relationship rather than the value.
    rs = random_returns(rng, 100);
    auto sr = sharpe(rs, 0.0);
    REQUIRE(sr.has_value());
    double expect = std::sqrt((1.0 + 0.5 * sr->sr * sr->sr) / 100.0);
    CHECK(sr->se == doctest::Approx(expect).epsilon(1e-12));
    // And the frozen point: SR = 1 at n = 100 gives SE = sqrt(1.5/100).
    CHECK(std::sqrt((1.0 + 0.5) / 100.0) == doctest::Approx(0.1224744871).epsilon(1e-8));
}

TEST_CASE("sharpe is undefined for degenerate inputs") {
    CHECK_FALSE(sharpe({0.01}, 0.0).has_value());
    CHECK_FALSE(sharpe(std::vector<double>{}, 0.0).has_value());
    CHECK_FALSE(sharpe({0.02, 0.02, 0.02}, 0.0).has_value());
}

TEST_CASE("sharpe matches a naive implementation on random vectors") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> len(2, 50);
    for (int trial = 0; trial < 1000; ++trial) {
        auto rs = random_returns(rng, len(rng));
        auto got = sharpe(rs, 0.001);
        auto want = oracle_sharpe(rs, 0.001);
        REQUIRE(got.has_value() == want.has_value());
        if (want) {
            CHECK(got->sr == doctest::Approx(*want).epsilon(1e-9));
        }
    }
}

TEST_CASE("cumulative return matches a naive loop on random vectors") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> len(1, 50);
    for (int trial = 0; trial < 1000; ++trial) {
        auto rs = random_returns(rng, len(rng));
        CHECK(cumulative_return(rs) ==
              doctest::Approx(oracle_cumulative_return(rs)).epsilon(1e-9));
    }
}

TEST_CASE("sharpe is invariant to shifting both returns and the risk-free rate") {
    std::mt19937 rng(5);
    auto rs = random_returns(rng, 24);
    auto base = sharpe(rs, 0.0);
    std::vector<double> shifted = rs;
    for (double& r : shifted) r += 0.01;
    auto moved = sharpe(shifted, 0.01);
    REQUIRE(base.has_value());
    REQUIRE(moved.has_value());
    CHECK(base->sr == doctest::Approx(moved->sr).epsilon(1e-9));
}

TEST_CASE("binomial two-sided p-value on frozen points") {
    CHECK(binomial_two_sided_pvalue(10, 10) == doctest::Approx(0.001953125).epsilon(1e-12));
    CHECK(binomial_two_sided_pvalue(0, 10) == doctest::Approx(0.001953125).epsilon(1e-12));
    CHECK(binomial_two_sided_pvalue(5, 10) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binomial_two_sided_pvalue(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    // 2 * CDF(2; 12, 0.5) = 2 * (1 + 12 + 66) / 4096
    CHECK(binomial_two_sided_pvalue(10, 12) == doctest::Approx(2.0 * 79.0 / 4096.0).epsilon(1e-12));
}

TEST_CASE("binomial two-sided p-value matches an exact big-integer oracle") {
    for (int n = 1; n <= 40; ++n) {
        for (int k = 0; k <= n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(binomial_two_sided_pvalue(k, n) ==
                  doctest::Approx(oracle_binomial_two_sided(k, n)).epsilon(1e-12));
        }
    }
    // A few larger sizes where naive factorials would have overflowed.
    for (int n : {120, 181, 240}) {
        for (int k : {0, n / 4, n / 2, n - 1}) {
            CHECK(binomial_two_sided_pvalue(k, n) ==
                  doctest::Approx(oracle_binomial_two_sided(k, n)).epsilon(1e-10));
        }
    }
}

TEST_CASE("binomial p-value is symmetric in wins and losses") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> nd(1, 300);
    for (int trial = 0; trial < 200; ++trial) {
        int n = nd(rng);
        int k = std::uniform_int_distribution<int>(0, n)(rng);
        CHECK(binomial_two_sided_pvalue(k, n) ==
              doctest::Approx(binomial_two_sided_pvalue(n - k, n)).epsilon(1e-13));
    }
}

TEST_CASE("hit rate counts active months only and treats zero returns as misses") {
    SignalSeries sig{SignalOrigin::sentiment_only, {}};
    MonthKey m(2021, 1);
    MonthlySeries rets("returns");
    // signal at t pairs with the return at t+1
    sig.entries[m] = 1;               // return +0.02 -> hit
    sig.entries[m.next()] = -1;       // return +0.01 -> miss
    sig.entries[m.next().next()] = 0; // flat, not active
    sig.entries[MonthKey(2021, 4)] = 1; // return 0.0 -> miss by convention
    rets.set(MonthKey(2021, 2), 0.02);
    rets.set(MonthKey(2021, 3), 0.01);
    rets.set(MonthKey(2021, 4), -0.05);
    rets.set(MonthKey(2021, 5), 0.0);
    auto hr = hit_rate(sig, rets);
    CHECK(hr.n_active == 3);
    CHECK(hr.hits == 1);
    CHECK(hr.rate == doctest::Approx(1.0 / 3.0));
    CHECK(hr.p_value == doctest::Approx(oracle_binomial_two_sided(1, 3)).epsilon(1e-12));
}

TEST_CASE("report assembles the same numbers the primitives produce") {
    std::mt19937 rng(77);
    auto rs = random_returns(rng, 18);
    std::vector<std::pair<int, double>> pairs;
    for (double r : rs) pairs.emplace_back(1, r);
    auto rep = report_from_returns(rs, pairs, 0.0);
    REQUIRE(rep.has_value());
    CHECK(rep->n_months == 18);
    CHECK(rep->cumulative_return ==
          doctest::Approx(oracle_cumulative_return(rs)).epsilon(1e-10));
    REQUIRE(rep->sharpe.has_value());
    CHECK(rep->sharpe->sr == doctest::Approx(*oracle_sharpe(rs, 0.0)).epsilon(1e-10));
    REQUIRE(rep->hits.has_value());
    int wins = 0;
    for (double r : rs)
        if (r > 0.0) ++wins;
    CHECK(rep->hits->hits == wins);
}

TEST_CASE("report is absent when fewer than two returns exist") {
    CHECK_FALSE(report_from_returns({0.02}, {{1, 0.02}}, 0.0).has_value());
    CHECK_FALSE(report_from_returns({}, {}, 0.0).has_value());
}

TEST_CASE("portfolio cumulative return ties out with the simulated final value") {
    MonthlySeries rets("returns");
    MonthKey m(2019, 1);
    std::mt19937 rng(13);
    for (double r : random_returns(rng, 30)) {
        rets.set(m.next(), r);
        m = m.next();
    }
    SignalSeries sig{SignalOrigin::buy_and_hold, {}};
    MonthKey s(2019, 1);
    for (int i = 0; i < 30; ++i) {
        sig.entries[s] = 1;
        s = s.next();
    }
    auto clipped = clip_to_returns(sig, rets);
    auto path = simulate(clipped, rets, 0.0);
    double cum = cumulative_return(path.period_returns);
    CHECK(path.final_value() / 100.0 - 1.0 == doctest::Approx(cum).epsilon(1e-10));
}
