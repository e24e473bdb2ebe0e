#pragma once

#include "podsum/logmath.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace podsum {

/// Default relative width of tail-sum enclosures for decay laws.
inline constexpr double kDefaultTailRtol = 1e-12;

/// Nonnegative coordinate weights Upsilon_j, j = 1, 2, ...
///
/// A sequence is one of
///   - Explicit: values[j-1] for j <= values.size(), zero beyond;
///   - PolyDecay: c * j^-rho with rho > 1;
///   - Zero;
///   - Blocked: c * ceil(j / block)^-rho, i.e. a PolyDecay law with every
///     value repeated `block` times. It arises as the reduced sequence of an
///     SPOD family and is otherwise rarely constructed directly.
///
/// Every law has a finite sum. Instances are immutable.
class WeightSequence {
public:
    struct Explicit {
        std::vector<double> values;
    };
    struct PolyDecay {
        double c;
        double rho;
    };
    struct Zero {};
    struct Blocked {
        double c;
        double rho;
        std::size_t block;
    };
    using Law = std::variant<Explicit, PolyDecay, Zero, Blocked>;

    static WeightSequence explicit_values(std::vector<double> values);
    static WeightSequence poly_decay(double c, double rho);
    static WeightSequence zero();
    static WeightSequence blocked(double c, double rho, std::size_t block);

    /// Upsilon_j for j >= 1.
    double term(std::size_t j) const;

    /// Enclosure of zeta_J = sum_{j >= J} Upsilon_j. Exact (lo == hi) for
    /// finite-support sequences; otherwise hi - lo <= rtol * hi.
    Interval tail_sum(std::size_t first, double rtol = kDefaultTailRtol) const;

    /// zeta_1 .. zeta_count, element J-1 holding zeta_J. Same guarantees as tail_sum.
    std::vector<Interval> tail_sums(std::size_t count, double rtol = kDefaultTailRtol) const;

    /// Index of the last nonzero term, or nullopt for laws with infinite support.
    std::optional<std::size_t> support_size() const;

    /// The sequence of squared terms Upsilon_j^2, or pointwise products with
    /// `other`. Returns nullopt when the product has no closed law here.
    std::optional<WeightSequence> product_with(const WeightSequence& other) const;

    bool is_zero() const;
    const Law& law() const noexcept { return law_; }

private:
    explicit WeightSequence(Law law) : law_(std::move(law)) {}

    Law law_;
};

/// Enclosure of c * sum_{j >= first} j^-rho for rho > 1.
Interval power_tail(double c, double rho, std::size_t first, double rtol = kDefaultTailRtol);

/// A nonnegative law with no summability requirement, e.g. c * j^-rho with
/// rho <= 1. Only term access is available; use as_weight_sequence() when the
/// sum is finite.
class RawSequence {
public:
    RawSequence(WeightSequence seq); // NOLINT(google-explicit-constructor)

    static RawSequence power_law(double c, double rho);
    static RawSequence explicit_values(std::vector<double> values);

    double term(std::size_t j) const;
    bool has_finite_sum() const;
    std::optional<WeightSequence> as_weight_sequence() const;

private:
    struct Power {
        double c;
        double rho;
    };
    explicit RawSequence(std::variant<WeightSequence, Power> law) : law_(std::move(law)) {}

    std::variant<WeightSequence, Power> law_;
};

/// Order-dependent factors Gamma_l, l = 0, 1, ...
class OrderProfile {
public:
    struct Explicit {
        std::vector<double> values; // Gamma_0 first
    };
    struct FactorialPower {
        double sigma;
    };
    using Law = std::variant<Explicit, FactorialPower>;

    static OrderProfile explicit_values(std::vector<double> values);
    static OrderProfile factorial_power(double sigma);

    /// log Gamma_l (-inf for zero values).
    double log_value(std::size_t order) const;
    /// log Gamma_0 .. log Gamma_max_order.
    std::vector<double> log_values(std::size_t max_order) const;

    /// True for FactorialPower with exactly this sigma.
    bool is_factorial_power(double sigma) const;
    std::optional<double> sigma() const;
    /// Last order with nonzero Gamma, or nullopt when unbounded.
    std::optional<std::size_t> support_size() const;
    const Law& law() const noexcept { return law_; }

private:
    explicit OrderProfile(Law law) : law_(std::move(law)) {}

    Law law_;
};

struct PODSpec {
    OrderProfile gamma;
    WeightSequence upsilon;
};

/// Smoothness-driven POD family: upsilon_grid[k-1] holds Upsilon_{., k}.
class SPODSpec {
public:
    SPODSpec(std::size_t alpha, OrderProfile gamma, std::vector<WeightSequence> upsilon_grid);

    std::size_t alpha() const noexcept { return alpha_; }
    const OrderProfile& gamma() const noexcept { return gamma_; }
    const WeightSequence& upsilon(std::size_t k) const { return grid_.at(k - 1); }
    const std::vector<WeightSequence>& grid() const noexcept { return grid_; }

    /// The POD family this SPOD family coincides with when alpha == 1.
    PODSpec as_pod() const;

private:
    std::size_t alpha_;
    OrderProfile gamma_;
    std::vector<WeightSequence> grid_;
};

} // namespace podsum
