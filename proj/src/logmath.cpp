#include "podsum/logmath.hpp"

#include <algorithm>
#include <vector>

namespace podsum {

double log_sum_exp(std::span<const double> log_terms) noexcept
{
    double peak = kNegInf;
    for (double t : log_terms) {
        peak = std::max(peak, t);
    }
    if (peak == kNegInf || peak == kPosInf) {
        return peak;
    }
    CompensatedSum acc;
    for (double t : log_terms) {
        acc.add(std::exp(t - peak));
    }
    return peak + std::log(acc.value());
}

namespace {

constexpr std::size_t kTableSize = std::size_t{1} << 20;

const std::vector<double>& log_factorial_table()
{
    static const std::vector<double> table = [] {
        std::vector<double> t(kTableSize);
        CompensatedSum acc;
        t[0] = 0.0;
        for (std::size_t k = 1; k < kTableSize; ++k) {
            acc.add(std::log(static_cast<double>(k)));
            t[k] = acc.value();
        }
        return t;
    }();
    return table;
}

double stirling_log_factorial(double n)
{
    // log n! = n log n - n + log(2 pi n)/2 + 1/(12n) - 1/(360n^3) + 1/(1260n^5) - 1/(1680n^7)
    const double inv = 1.0 / n;
    const double inv2 = inv * inv;
    const double series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    return n * std::log(n) - n + 0.5 * std::log(2.0 * M_PI * n) + series;
}

} // namespace

double log_factorial(double n)
{
    if (n < 0.0) {
        return kPosInf;
    }
    const double k = std::floor(n);
    if (k < static_cast<double>(kTableSize)) {
        return log_factorial_table()[static_cast<std::size_t>(k)];
    }
    return stirling_log_factorial(k);
}

} // namespace podsum
