#pragma once

#include "podsum/logmath.hpp"
#include "podsum/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace podsum {

/// f(m) = sum_{l >= 0} m^l / (l!)^theta.
class ThetaSeries {
public:
    explicit ThetaSeries(double theta);

    double theta() const noexcept { return theta_; }
    /// l_* = floor(m^(1/theta)), the index of the largest term.
    std::uint64_t peak_index(double m) const;
    /// log(m^l / (l!)^theta).
    double log_term(double m, std::uint64_t order) const;

private:
    double theta_;
};

struct ThetaEval {
    double log_value = kNegInf;     // log of the summed terms
    double log_omitted = kNegInf;   // log of an upper bound on the terms left out
    std::uint64_t peak = 0;         // l_*
    double log_peak = kNegInf;      // log of the l_* term
    std::uint64_t first = 0;        // summed index range [first, last]
    std::uint64_t last = 0;

    /// Upper bound on log f including the omitted terms.
    double log_upper() const noexcept { return log_add_exp(log_value, log_omitted); }
};

/// Log-domain evaluation outward from the peak term until terms on both
/// sides fall 60 nats below it. Throws InvalidArgument when m is not
/// positive or l_* exceeds 1e15.
ThetaEval theta_series_detail(const ThetaSeries& ts, double m);
double theta_series_eval(const ThetaSeries& ts, double m);

/// log sum_{l >= from} m^l / (l!)^theta, same cutoff rule; log_upper() of the
/// result is a certified upper bound.
ThetaEval theta_series_tail(const ThetaSeries& ts, double m, std::uint64_t from);

/// [log peak, log((2 l_* + 1/(1 - 2^-theta)) peak)] for l_* >= 1. For m < 1
/// (l_* = 0) the factor form does not bound f, and the upper endpoint is
/// log(1/(1-m)) instead.
Interval theta_sandwich(const ThetaSeries& ts, double m);

/// (m, m^(-1/theta) log f(m)) per grid point, evaluated in parallel.
std::vector<std::pair<double, double>> theta_rate(const ThetaSeries& ts, std::span<const double> m_grid);

/// Growth-rate bracket for (l!)^sigma order weights against c j^-rho.
struct RateBracket {
    double rho = 0.0;
    double sigma = 0.0;
    double c_upsilon = 0.0;
    double c_rho = 0.0;       // e / min(rho - 1, 1)
    double lower_const = 0.0; // (rho - sigma) c_upsilon^(1/(rho - sigma))
    double upper_const = 0.0; // (rho - sigma) (c_rho c_upsilon)^(1/(rho - sigma))

    double exponent() const noexcept { return 1.0 / (rho - sigma); }
};

/// Throws NotSummable when rho <= sigma, InvalidArgument when rho <= 1,
/// sigma < 0 or c_upsilon <= 0.
RateBracket theorem5_bracket(double rho, double sigma, double c_upsilon);

/// Normalized logs m^(-1/(rho-sigma)) log(.) of three curves at one m.
struct RatePoint {
    double m = 0.0;
    double lower_series = 0.0; // sum_l (c m)^l / (l!)^(rho - sigma)
    double exact_lo = 0.0;     // adaptive_sum lower bound on S_gamma(m)
    bool exact_converged = true;
    double upper = kPosInf;    // theorem1_bound value, +inf if uncertified
    std::size_t upper_order = 0;
};

/// Requires Gamma = FactorialPower(sigma) and Upsilon = PolyDecay(c, rho).
/// Throws NotSummable for rho <= sigma.
std::vector<RatePoint> empirical_rate(const PODSpec& spec, std::span<const double> m_grid, double rtol = 1e-6,
                                      std::size_t max_d = 1u << 16);

struct SubexpInput {
    double m = 0.0;
    Interval log_s; // enclosure (or bounds) of log S_gamma(m)
};

struct SubexpPoint {
    double m = 0.0;
    double lo = 0.0; // log_s.lo / m
    double hi = 0.0; // log_s.hi / m
};

struct SubexpReport {
    std::vector<SubexpPoint> points;
    /// |hi| and |lo| strictly decrease along the grid.
    bool decreasing = false;
};

/// (1/m) log S per grid point. Requires >= 3 points with increasing m.
SubexpReport subexp_check(std::span<const SubexpInput> values);

} // namespace podsum
