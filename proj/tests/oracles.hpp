#pragma once

// Independent reference computations for the tests: plain enumeration in
// extended precision, with no shared code paths with the library.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Frozen high-precision constants (computed offline with 30-digit arithmetic).
inline constexpr double kZeta2 = 1.644934066848226436;           // pi^2 / 6
inline constexpr double kZeta1_5 = 2.612375348685488343;
inline constexpr double kZeta3 = 1.202056903159594285;
inline constexpr double kHurwitz2From5 = 0.2213229557371153254;  // sum_{j>=5} j^-2
inline constexpr double kZeta1_01 = 100.5779433384967837;
inline constexpr double kBesselI0At4 = 11.30192195213633049636;   // sum 4^l/(l!)^2
// sum_l l! pi^(2l) / (2l+1)!, the POD sum with Gamma_l = l!, Upsilon_j = j^-2, m = 1.
inline constexpr double kPodSumAt1 = 6.477680391161560882970;
inline constexpr double kPodSumAt2 = 55.37797423364640514;
// log(sinh(pi)/pi) = log prod_j (1 + j^-2).
inline constexpr double kLogSinhPiOverPi = 1.301846398603712678;
// log sum_l m^l/(l!)^theta for (theta, m).
inline constexpr double kLogThetaHalfAt2 = 3.129328279845042377;
inline constexpr double kLogTheta3At10 = 3.364313403193514967;
inline constexpr double kLogTheta2At100 = 17.58961042824427429;

inline long double factorial(unsigned n)
{
    long double f = 1.0L;
    for (unsigned k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

/// e_l(values) by enumerating all subsets.
inline long double esym(const std::vector<double>& values, unsigned order)
{
    const std::size_t d = values.size();
    long double acc = 0.0L;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
        if (static_cast<unsigned>(__builtin_popcountll(mask)) != order) {
            continue;
        }
        long double p = 1.0L;
        for (std::size_t j = 0; j < d; ++j) {
            if (mask >> j & 1) {
                p *= values[j];
            }
        }
        acc += p;
    }
    return acc;
}

/// sum over subsets v of {1..d} with |v| <= max_order of gamma[|v|] m^|v| prod values.
inline long double pod_sum(const std::vector<double>& values, const std::vector<double>& gamma, double m,
                           std::size_t max_order)
{
    const std::size_t d = values.size();
    long double acc = 0.0L;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (size > max_order) {
            continue;
        }
        long double p = gamma[size];
        for (std::size_t j = 0; j < d; ++j) {
            if (mask >> j & 1) {
                p *= static_cast<long double>(m) * values[j];
            }
        }
        acc += p;
    }
    return acc;
}

/// SPOD sum over all (v, nu): grid[k-1][j-1] = Upsilon_{j,k}; gamma indexed by |nu|.
/// Counts through all (alpha + 1)^d labelings, label 0 meaning j is not in v.
inline long double spod_sum(const std::vector<std::vector<double>>& grid, const std::vector<double>& gamma,
                            double m, std::size_t d, std::size_t max_order)
{
    const std::size_t alpha = grid.size();
    std::vector<std::size_t> label(d, 0);
    long double acc = 0.0L;
    for (;;) {
        std::size_t size = 0, weight = 0;
        long double p = 1.0L;
        for (std::size_t j = 0; j < d; ++j) {
            if (label[j] > 0) {
                ++size;
                weight += label[j];
                p *= static_cast<long double>(m) * grid[label[j] - 1][j];
            }
        }
        if (size <= max_order) {
            acc += gamma[weight] * p;
        }
        std::size_t pos = 0;
        while (pos < d && label[pos] == alpha) {
            label[pos++] = 0;
        }
        if (pos == d) {
            break;
        }
        ++label[pos];
    }
    return acc;
}

/// sum over (v, nu) with |v| = l, |nu| = w, v in {1..d}, of prod Upsilon_{j,nu_j}.
inline long double spod_slice(const std::vector<std::vector<double>>& grid, std::size_t d, std::size_t l,
                              std::size_t w)
{
    const std::size_t alpha = grid.size();
    std::vector<std::size_t> label(d, 0);
    long double acc = 0.0L;
    for (;;) {
        std::size_t size = 0, weight = 0;
        long double p = 1.0L;
        for (std::size_t j = 0; j < d; ++j) {
            if (label[j] > 0) {
                ++size;
                weight += label[j];
                p *= grid[label[j] - 1][j];
            }
        }
        if (size == l && weight == w) {
            acc += p;
        }
        std::size_t pos = 0;
        while (pos < d && label[pos] == alpha) {
            label[pos++] = 0;
        }
        if (pos == d) {
            break;
        }
        ++label[pos];
    }
    return acc;
}

/// sum_l m^l / (l!)^theta by direct partial summation until terms stop mattering.
inline long double theta_series(double theta, double m)
{
    long double term = 1.0L, acc = 1.0L;
    for (unsigned l = 1; l < 100000; ++l) {
        term *= static_cast<long double>(m) / std::pow(static_cast<long double>(l), static_cast<long double>(theta));
        acc += term;
        if (l > m && term < acc * 1e-22L) {
            break;
        }
    }
    return acc;
}

/// Probability that `order` i.i.d. draws from weights/sum are distinct, by
/// enumerating ordered tuples.
inline long double distinct_probability(const std::vector<double>& weights, unsigned order)
{
    long double total = 0.0L;
    for (double w : weights) {
        total += w;
    }
    const std::size_t n = weights.size();
    std::vector<std::size_t> pick(order, 0);
    long double acc = 0.0L;
    std::function<void(unsigned, long double, std::uint64_t)> rec = [&](unsigned depth, long double p,
                                                                         std::uint64_t used) {
        if (depth == order) {
            acc += p;
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!(used >> j & 1)) {
                rec(depth + 1, p * weights[j] / total, used | (std::uint64_t{1} << j));
            }
        }
    };
    rec(0, 1.0L, 0);
    return acc;
}

inline double rel_err(long double got, long double want)
{
    if (want == 0.0L) {
        return static_cast<double>(std::fabs(got));
    }
    return static_cast<double>(std::fabs(got - want) / std::fabs(want));
}

/// Deterministic generator for test instances.
inline std::mt19937_64 rng(std::uint64_t seed)
{
    return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64& g, double lo = 0.0, double hi = 1.0)
{
    return lo + (hi - lo) * std::generate_canonical<double, 53>(g);
}

inline std::size_t below(std::mt19937_64& g, std::size_t n)
{
    return static_cast<std::size_t>(g() % n);
}

/// Random nonnegative weights of length d, some exactly zero.
inline std::vector<double> weights(std::mt19937_64& g, std::size_t d, double zero_share = 0.1)
{
    std::vector<double> v(d);
    const double rho = uniform(g, 1.1, 3.0);
    for (std::size_t j = 0; j < d; ++j) {
        v[j] = uniform(g) < zero_share ? 0.0 : uniform(g) * std::pow(static_cast<double>(j + 1), -rho);
    }
    return v;
}

} // namespace oracle
