#include "podsum/asymptotics.hpp"

#include "podsum/errors.hpp"
#include "podsum/parallel.hpp"
#include "podsum/podsum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace podsum {

namespace {

constexpr double kCutoffNats = 60.0;
constexpr double kMaxPeak = 1e15;

// Sums terms l >= from outward from max(from, l_*).
ThetaEval sum_outward(const ThetaSeries& ts, double m, std::uint64_t from)
{
    const double theta = ts.theta();
    const double log_m = std::log(m);
    ThetaEval out;
    out.peak = ts.peak_index(m);
    out.log_peak = ts.log_term(m, out.peak);

    const std::uint64_t start = std::max(from, out.peak);
    const double log_start = ts.log_term(m, start);
    CompensatedSum acc;
    acc.add(1.0);

    // Upward: terms decrease since start >= l_*.
    double delta = 0.0;
    std::uint64_t l = start;
    for (;;) {
        const double step = log_m - theta * std::log(static_cast<double>(l + 1));
        if (delta < -kCutoffNats && step < 0.0) {
            // Remaining terms shrink at least geometrically with ratio e^step.
            const double r = std::exp(step);
            out.log_omitted = log_start + delta + std::log(r / (1.0 - r));
            break;
        }
        delta += step;
        ++l;
        acc.add(std::exp(delta));
    }
    out.last = l;

    // Downward: terms decrease as l moves away from l_*.
    delta = 0.0;
    l = start;
    while (l > from) {
        if (delta < -kCutoffNats) {
            const double count = static_cast<double>(l - from);
            out.log_omitted = log_add_exp(out.log_omitted, log_start + delta + std::log(count));
            break;
        }
        delta -= log_m - theta * std::log(static_cast<double>(l));
        --l;
        acc.add(std::exp(delta));
    }
    out.first = l;
    out.log_value = log_start + std::log(acc.value());
    return out;
}

} // namespace

ThetaSeries::ThetaSeries(double theta) : theta_(theta)
{
    if (!std::isfinite(theta) || !(theta > 0.0)) {
        throw InvalidArgument("theta must be finite and positive");
    }
}

std::uint64_t ThetaSeries::peak_index(double m) const
{
    if (!std::isfinite(m) || !(m > 0.0)) {
        throw InvalidArgument("evaluation point m must be finite and positive");
    }
    const double peak = std::floor(std::pow(m, 1.0 / theta_));
    if (peak > kMaxPeak) {
        throw InvalidArgument("peak index m^(1/theta) exceeds 1e15; the series is out of range");
    }
    return static_cast<std::uint64_t>(peak);
}

double ThetaSeries::log_term(double m, std::uint64_t order) const
{
    const double l = static_cast<double>(order);
    return (order == 0 ? 0.0 : l * std::log(m)) - theta_ * log_factorial(l);
}

ThetaEval theta_series_detail(const ThetaSeries& ts, double m)
{
    return sum_outward(ts, m, 0);
}

double theta_series_eval(const ThetaSeries& ts, double m)
{
    return sum_outward(ts, m, 0).log_value;
}

ThetaEval theta_series_tail(const ThetaSeries& ts, double m, std::uint64_t from)
{
    return sum_outward(ts, m, from);
}

Interval theta_sandwich(const ThetaSeries& ts, double m)
{
    const std::uint64_t peak = ts.peak_index(m);
    const double log_peak = ts.log_term(m, peak);
    if (peak == 0) {
        return {log_peak, -std::log1p(-m)};
    }
    const double factor = 2.0 * static_cast<double>(peak) + 1.0 / -std::expm1(-ts.theta() * std::log(2.0));
    return {log_peak, log_peak + std::log(factor)};
}

std::vector<std::pair<double, double>> theta_rate(const ThetaSeries& ts, std::span<const double> m_grid)
{
    if (m_grid.empty()) {
        throw InvalidArgument("m grid must not be empty");
    }
    std::vector<std::pair<double, double>> out(m_grid.size());
    parallel_for(m_grid.size(), [&](std::size_t i) {
        const double m = m_grid[i];
        out[i] = {m, std::exp(-std::log(m) / ts.theta()) * theta_series_eval(ts, m)};
    });
    return out;
}

RateBracket theorem5_bracket(double rho, double sigma, double c_upsilon)
{
    if (!(rho > 1.0) || !std::isfinite(rho)) {
        throw InvalidArgument("rho must exceed 1");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("sigma must be nonnegative");
    }
    if (!(c_upsilon > 0.0) || !std::isfinite(c_upsilon)) {
        throw InvalidArgument("c_upsilon must be positive");
    }
    if (rho <= sigma) {
        throw NotSummable("rho <= sigma: S_gamma(m) is finite for all m > 0 if and only if rho > sigma");
    }
    RateBracket b;
    b.rho = rho;
    b.sigma = sigma;
    b.c_upsilon = c_upsilon;
    b.c_rho = std::exp(1.0) / std::min(rho - 1.0, 1.0);
    const double e = b.exponent();
    b.lower_const = (rho - sigma) * std::pow(c_upsilon, e);
    b.upper_const = (rho - sigma) * std::pow(b.c_rho * c_upsilon, e);
    return b;
}

std::vector<RatePoint> empirical_rate(const PODSpec& spec, std::span<const double> m_grid, double rtol,
                                      std::size_t max_d)
{
    const auto sigma = spec.gamma.sigma();
    const auto* law = std::get_if<WeightSequence::PolyDecay>(&spec.upsilon.law());
    if (!sigma || !law) {
        throw InvalidArgument("empirical rate needs Gamma = (l!)^sigma and Upsilon = c j^-rho");
    }
    const RateBracket bracket = theorem5_bracket(law->rho, *sigma, law->c);
    const ThetaSeries lower_series(law->rho - *sigma);

    std::vector<RatePoint> out(m_grid.size());
    parallel_for(m_grid.size(), [&](std::size_t i) {
        const double m = m_grid[i];
        const double scale = std::exp(-std::log(m) * bracket.exponent());
        RatePoint p;
        p.m = m;
        p.lower_series = scale * theta_series_eval(lower_series, law->c * m);
        try {
            p.exact_lo = scale * adaptive_sum(spec, m, rtol, max_d).log_value;
        } catch (const BudgetExceeded& e) {
            p.exact_lo = scale * e.last_log_value();
            p.exact_converged = false;
        }
        const auto order = theorem1_certificate_order(spec, m);
        p.upper_order = order ? 2 * *order + 10 : 0;
        if (order) {
            const Theorem1Bound t1 = theorem1_bound(spec, m, p.upper_order);
            p.upper = scale * t1.log_value;
        }
        out[i] = p;
    });
    return out;
}

SubexpReport subexp_check(std::span<const SubexpInput> values)
{
    if (values.size() < 3) {
        throw InvalidArgument("sub-exponential check needs at least 3 grid points");
    }
    SubexpReport report;
    report.decreasing = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& v = values[i];
        if (i > 0 && !(v.m > values[i - 1].m)) {
            throw InvalidArgument("grid must be strictly increasing in m");
        }
        SubexpPoint p{v.m, v.log_s.lo / v.m, v.log_s.hi / v.m};
        if (i > 0) {
            const auto& q = report.points.back();
            if (!(std::abs(p.hi) < std::abs(q.hi)) || !(std::abs(p.lo) < std::abs(q.lo))) {
                report.decreasing = false;
            }
        }
        report.points.push_back(p);
    }
    return report;
}

} // namespace podsum
