#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace podsum {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
/// Unit roundoff of binary64.
inline constexpr double kUnitRoundoff = 0x1p-53;

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
inline double log_add_exp(double a, double b) noexcept
{
    if (a < b) {
        std::swap(a, b);
    }
    if (b == kNegInf || a == kPosInf) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

/// log of a nonnegative real, mapping 0 to -inf.
inline double safe_log(double x) noexcept
{
    return x > 0.0 ? std::log(x) : kNegInf;
}

double log_sum_exp(std::span<const double> log_terms) noexcept;

/// log(n!), backed by a compensated running sum of log k for n below 2^20
/// and by the Stirling series beyond. Thread-safe.
double log_factorial(double n);

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Closed enclosure [lo, hi] of a real quantity.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    double mid() const noexcept { return 0.5 * (lo + hi); }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    bool is_point() const noexcept { return lo == hi; }

    friend Interval operator+(Interval a, Interval b) noexcept { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator*(double s, Interval a) noexcept { return {s * a.lo, s * a.hi}; }
};

} // namespace podsum
