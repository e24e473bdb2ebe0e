#include "podsum/weights.hpp"

#include "podsum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace podsum {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite_nonnegative(double x, const char* what)
{
    if (!std::isfinite(x) || x < 0.0) {
        throw InvalidArgument(std::string(what) + " must be finite and nonnegative");
    }
}

void require_decay_exponent(double rho)
{
    if (!std::isfinite(rho) || !(rho > 1.0)) {
        throw InvalidArgument("decay exponent rho must exceed 1 for a finite tail sum (got " +
                              std::to_string(rho) + ")");
    }
}

void validate_values(const std::vector<double>& values, const char* what)
{
    for (double v : values) {
        require_finite_nonnegative(v, what);
    }
}

std::size_t last_nonzero(const std::vector<double>& values)
{
    for (std::size_t i = values.size(); i > 0; --i) {
        if (values[i - 1] != 0.0) {
            return i;
        }
    }
    return 0;
}

// Pads an enclosure outward for the few roundings in its evaluation.
Interval widen(double lo, double hi, double ulps)
{
    return {std::max(0.0, lo * (1.0 - ulps * kUnitRoundoff)), hi * (1.0 + ulps * kUnitRoundoff)};
}

} // namespace

Interval power_tail(double c, double rho, std::size_t first, double rtol)
{
    require_finite_nonnegative(c, "scale c");
    require_decay_exponent(rho);
    if (first == 0) {
        throw InvalidArgument("tail sums start at index 1");
    }
    if (!(rtol >= 1e-14)) {
        throw InvalidArgument("tail enclosure rtol must be at least 1e-14");
    }
    if (c == 0.0) {
        return {0.0, 0.0};
    }

    // Partial sum up to N-1, then the Euler-Maclaurin remainder at N. For the
    // completely monotone x^-rho the error after the f' correction lies between
    // zero and the f''' term, so [lo_rem, hi_rem] is a rigorous enclosure.
    const double rho3 = rho * (rho + 1.0) * (rho + 2.0);
    CompensatedSum partial;
    std::size_t n = first;
    double lo_rem = 0.0;
    double hi_rem = 0.0;
    for (std::size_t steps = 0;; ++steps) {
        const double x = static_cast<double>(n);
        const double f = std::pow(x, -rho);
        hi_rem = x * f / (rho - 1.0) + 0.5 * f + rho * f / (12.0 * x);
        lo_rem = hi_rem - rho3 * f / (720.0 * x * x * x);
        if (hi_rem - lo_rem <= 0.5 * rtol * (partial.value() + lo_rem)) {
            break;
        }
        if (steps > 100'000'000) {
            throw InvalidArgument("tail enclosure did not reach the requested width");
        }
        partial.add(f);
        ++n;
    }
    const double p = partial.value();
    return widen(c * (p + lo_rem), c * (p + hi_rem), 16.0);
}

WeightSequence WeightSequence::explicit_values(std::vector<double> values)
{
    validate_values(values, "explicit weight");
    return WeightSequence(Explicit{std::move(values)});
}

WeightSequence WeightSequence::poly_decay(double c, double rho)
{
    require_finite_nonnegative(c, "scale c");
    require_decay_exponent(rho);
    return WeightSequence(PolyDecay{c, rho});
}

WeightSequence WeightSequence::zero()
{
    return WeightSequence(Zero{});
}

WeightSequence WeightSequence::blocked(double c, double rho, std::size_t block)
{
    require_finite_nonnegative(c, "scale c");
    require_decay_exponent(rho);
    if (block == 0) {
        throw InvalidArgument("block length must be positive");
    }
    return WeightSequence(Blocked{c, rho, block});
}

double WeightSequence::term(std::size_t j) const
{
    if (j == 0) {
        throw InvalidArgument("sequences are 1-indexed");
    }
    return std::visit(overloaded{
                          [j](const Explicit& e) { return j <= e.values.size() ? e.values[j - 1] : 0.0; },
                          [j](const PolyDecay& p) {
                              return p.c == 0.0 ? 0.0 : p.c * std::pow(static_cast<double>(j), -p.rho);
                          },
                          [](const Zero&) { return 0.0; },
                          [j](const Blocked& b) {
                              const std::size_t block_index = (j + b.block - 1) / b.block;
                              return b.c == 0.0 ? 0.0
                                                : b.c * std::pow(static_cast<double>(block_index), -b.rho);
                          },
                      },
                      law_);
}

Interval WeightSequence::tail_sum(std::size_t first, double rtol) const
{
    if (first == 0) {
        throw InvalidArgument("tail sums start at index 1");
    }
    return std::visit(overloaded{
                          [first](const Explicit& e) -> Interval {
                              CompensatedSum acc;
                              for (std::size_t j = e.values.size(); j >= first && j > 0; --j) {
                                  acc.add(e.values[j - 1]);
                              }
                              const double v = acc.value();
                              return {v, v};
                          },
                          [first, rtol](const PolyDecay& p) { return power_tail(p.c, p.rho, first, rtol); },
                          [](const Zero&) { return Interval{0.0, 0.0}; },
                          [first, rtol](const Blocked& b) -> Interval {
                              const std::size_t block_index = (first + b.block - 1) / b.block;
                              const double remaining = static_cast<double>(b.block * block_index - first + 1);
                              const double head =
                                  remaining * b.c * std::pow(static_cast<double>(block_index), -b.rho);
                              const Interval rest =
                                  static_cast<double>(b.block) * power_tail(b.c, b.rho, block_index + 1, rtol);
                              return widen(head + rest.lo, head + rest.hi, 4.0);
                          },
                      },
                      law_);
}

std::vector<Interval> WeightSequence::tail_sums(std::size_t count, double rtol) const
{
    std::vector<Interval> out(count, Interval{0.0, 0.0});
    if (count == 0) {
        return out;
    }
    if (const auto* e = std::get_if<Explicit>(&law_)) {
        // Same accumulation order as tail_sum, so both agree exactly.
        CompensatedSum acc;
        for (std::size_t j = e->values.size(); j > 0; --j) {
            acc.add(e->values[j - 1]);
            if (j <= count) {
                const double v = acc.value();
                out[j - 1] = {v, v};
            }
        }
        return out;
    }
    if (std::holds_alternative<Zero>(law_)) {
        return out;
    }
    const Interval base = tail_sum(count + 1, std::max(0.5 * rtol, 1e-14));
    CompensatedSum acc;
    for (std::size_t j = count; j > 0; --j) {
        acc.add(term(j));
        const double p = acc.value();
        out[j - 1] = widen(base.lo + p, base.hi + p, 8.0);
    }
    return out;
}

std::optional<std::size_t> WeightSequence::support_size() const
{
    return std::visit(overloaded{
                          [](const Explicit& e) -> std::optional<std::size_t> { return last_nonzero(e.values); },
                          [](const PolyDecay& p) -> std::optional<std::size_t> {
                              if (p.c == 0.0) {
                                  return std::size_t{0};
                              }
                              return std::nullopt;
                          },
                          [](const Zero&) -> std::optional<std::size_t> { return std::size_t{0}; },
                          [](const Blocked& b) -> std::optional<std::size_t> {
                              if (b.c == 0.0) {
                                  return std::size_t{0};
                              }
                              return std::nullopt;
                          },
                      },
                      law_);
}

bool WeightSequence::is_zero() const
{
    const auto n = support_size();
    return n && *n == 0;
}

std::optional<WeightSequence> WeightSequence::product_with(const WeightSequence& other) const
{
    if (is_zero() || other.is_zero()) {
        return zero();
    }
    const auto materialize = [](const Explicit& e, const WeightSequence& rhs) {
        std::vector<double> v(e.values.size());
        for (std::size_t j = 1; j <= v.size(); ++j) {
            v[j - 1] = e.values[j - 1] * rhs.term(j);
        }
        return explicit_values(std::move(v));
    };
    if (const auto* e = std::get_if<Explicit>(&law_)) {
        return materialize(*e, other);
    }
    if (const auto* e = std::get_if<Explicit>(&other.law_)) {
        return materialize(*e, *this);
    }
    const auto* p = std::get_if<PolyDecay>(&law_);
    const auto* q = std::get_if<PolyDecay>(&other.law_);
    if (p && q) {
        return poly_decay(p->c * q->c, p->rho + q->rho);
    }
    const auto* a = std::get_if<Blocked>(&law_);
    const auto* b = std::get_if<Blocked>(&other.law_);
    if (a && b && a->block == b->block) {
        return blocked(a->c * b->c, a->rho + b->rho, a->block);
    }
    return std::nullopt;
}

RawSequence::RawSequence(WeightSequence seq) : law_(std::move(seq)) {}

RawSequence RawSequence::power_law(double c, double rho)
{
    require_finite_nonnegative(c, "scale c");
    if (!std::isfinite(rho)) {
        throw InvalidArgument("exponent rho must be finite");
    }
    if (c == 0.0) {
        return RawSequence(WeightSequence::zero());
    }
    if (rho > 1.0) {
        return RawSequence(WeightSequence::poly_decay(c, rho));
    }
    return RawSequence(Power{c, rho});
}

RawSequence RawSequence::explicit_values(std::vector<double> values)
{
    return RawSequence(WeightSequence::explicit_values(std::move(values)));
}

double RawSequence::term(std::size_t j) const
{
    if (const auto* seq = std::get_if<WeightSequence>(&law_)) {
        return seq->term(j);
    }
    if (j == 0) {
        throw InvalidArgument("sequences are 1-indexed");
    }
    const auto& p = std::get<Power>(law_);
    return p.c * std::pow(static_cast<double>(j), -p.rho);
}

bool RawSequence::has_finite_sum() const
{
    return std::holds_alternative<WeightSequence>(law_);
}

std::optional<WeightSequence> RawSequence::as_weight_sequence() const
{
    if (const auto* seq = std::get_if<WeightSequence>(&law_)) {
        return *seq;
    }
    return std::nullopt;
}

OrderProfile OrderProfile::explicit_values(std::vector<double> values)
{
    if (values.empty()) {
        throw InvalidArgument("explicit order profile needs at least Gamma_0");
    }
    validate_values(values, "explicit Gamma");
    return OrderProfile(Explicit{std::move(values)});
}

OrderProfile OrderProfile::factorial_power(double sigma)
{
    require_finite_nonnegative(sigma, "sigma");
    return OrderProfile(FactorialPower{sigma});
}

double OrderProfile::log_value(std::size_t order) const
{
    if (const auto* e = std::get_if<Explicit>(&law_)) {
        return order < e->values.size() ? safe_log(e->values[order]) : kNegInf;
    }
    const double sigma = std::get<FactorialPower>(law_).sigma;
    return sigma == 0.0 ? 0.0 : sigma * log_factorial(static_cast<double>(order));
}

std::vector<double> OrderProfile::log_values(std::size_t max_order) const
{
    std::vector<double> out(max_order + 1);
    for (std::size_t l = 0; l <= max_order; ++l) {
        out[l] = log_value(l);
    }
    return out;
}

bool OrderProfile::is_factorial_power(double sigma) const
{
    const auto* f = std::get_if<FactorialPower>(&law_);
    return f && f->sigma == sigma;
}

std::optional<double> OrderProfile::sigma() const
{
    if (const auto* f = std::get_if<FactorialPower>(&law_)) {
        return f->sigma;
    }
    return std::nullopt;
}

std::optional<std::size_t> OrderProfile::support_size() const
{
    if (const auto* e = std::get_if<Explicit>(&law_)) {
        const std::size_t n = last_nonzero(e->values);
        return n == 0 ? 0 : n - 1;
    }
    return std::nullopt;
}

SPODSpec::SPODSpec(std::size_t alpha, OrderProfile gamma, std::vector<WeightSequence> upsilon_grid)
    : alpha_(alpha), gamma_(std::move(gamma)), grid_(std::move(upsilon_grid))
{
    if (alpha_ == 0) {
        throw InvalidArgument("smoothness alpha must be at least 1");
    }
    if (grid_.size() != alpha_) {
        throw InvalidArgument("SPOD family needs exactly alpha coordinate sequences (got " +
                              std::to_string(grid_.size()) + " for alpha = " + std::to_string(alpha_) + ")");
    }
}

PODSpec SPODSpec::as_pod() const
{
    if (alpha_ != 1) {
        throw InvalidArgument("only alpha = 1 SPOD families coincide with a POD family");
    }
    return PODSpec{gamma_, grid_.front()};
}

} // namespace podsum
