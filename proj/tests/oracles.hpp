#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <optional>
#include <vector>

namespace sentibt::testing {

/// Brute-force metric implementations, written independently of the library
/// code paths so agreement is meaningful.

inline double oracle_cumulative_return(const std::vector<double>& rs) {
    double acc = 1.0;
    for (double r : rs) acc = acc + acc * r;
    return acc - 1.0;
}

inline double oracle_mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double oracle_sample_stdev(const std::vector<double>& xs) {
    double m = oracle_mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

inline std::optional<double> oracle_sharpe(const std::vector<double>& xs, double rf) {
    if (xs.size() < 2) return std::nullopt;
    double s = oracle_sample_stdev(xs);
    if (s == 0.0) return std::nullopt;
    return (oracle_mean(xs) - rf) / s;
}

inline std::optional<double> oracle_r2(const std::vector<double>& y,
                                       const std::vector<double>& yhat) {
    double m = oracle_mean(y);
    double res = 0.0;
    double tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        res += (y[i] - yhat[i]) * (y[i] - yhat[i]);
        tot += (y[i] - m) * (y[i] - m);
    }
    if (tot == 0.0) return std::nullopt;
    return 1.0 - res / tot;
}

inline double oracle_rmse(const std::vector<double>& y, const std::vector<double>& yhat) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    return std::sqrt(s / static_cast<double>(y.size()));
}

inline double oracle_mae(const std::vector<double>& y, const std::vector<double>& yhat) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i] - yhat[i]);
    return s / static_cast<double>(y.size());
}

/// Exact two-sided binomial test at p = 1/2 over big integers: p-value =
/// (sum of C(n,j) over j with C(n,j) <= C(n,k)) / 2^n, computed without any
/// floating-point shortcuts until the final division.
inline double oracle_binomial_two_sided(int k, int n) {
    namespace mp = boost::multiprecision;
    std::vector<mp::cpp_int> row(n + 1);
    row[0] = 1;
    for (int j = 1; j <= n; ++j) {
        row[j] = row[j - 1] * (n - j + 1) / j;
    }
    mp::cpp_int observed = row[k];
    mp::cpp_int extreme = 0;
    for (int j = 0; j <= n; ++j) {
        if (row[j] <= observed) extreme += row[j];
    }
    double out = std::ldexp(extreme.convert_to<double>(), -n);
    return out > 1.0 ? 1.0 : out;
}

}  // namespace sentibt::testing
