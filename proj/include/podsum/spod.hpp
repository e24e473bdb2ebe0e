#pragma once

#include "podsum/logmath.hpp"
#include "podsum/podsum.hpp"
#include "podsum/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace podsum {

/// log T[l][l'] = log sum over (v, nu) with v in {1..d}, |v| = l, |nu| = l' of
/// prod_{j in v} Upsilon_{j, nu_j}, for l <= L and l <= l' <= alpha l.
class SpodTable {
public:
    SpodTable(std::size_t alpha, std::size_t max_order);

    std::size_t alpha() const noexcept { return alpha_; }
    std::size_t max_order() const noexcept { return max_order_; }
    std::size_t prefix_length() const noexcept { return d_; }

    /// -inf outside l <= l' <= alpha l.
    double entry(std::size_t order, std::size_t weight) const;

    /// Adds coordinate d + 1 with log Upsilon_{d+1, k} = log_terms[k-1].
    void push(std::span<const double> log_terms);

private:
    std::size_t width() const noexcept { return alpha_ * max_order_ + 1; }

    std::size_t alpha_;
    std::size_t max_order_;
    std::size_t d_ = 0;
    std::vector<double> values_;
};

SpodTable build_spod_table(const SPODSpec& spec, std::size_t d, std::size_t max_order);

/// log(Gamma_0 + sum_{l=1}^{L} m^l sum_{l'=l}^{alpha l} Gamma_{l'} T[l][l']).
/// For alpha = 1 the result is bit-identical to truncated_sum(spec.as_pod(), ...).
double spod_truncated_sum(const SPODSpec& spec, double m, std::size_t d, std::size_t max_order);

/// Same refinement rule as adaptive_sum, with corrections for subsets having
/// one or two coordinates past d. Throws NotSummable unless
/// spod_classify() reports Summable, BudgetExceeded past max_d.
AdaptiveResult spod_adaptive_sum(const SPODSpec& spec, double m, double rtol = 1e-8,
                                 std::size_t max_d = kDefaultMaxPrefix);

enum class SpodClass { Summable, NotSummable, Undetermined };

struct SpodClassification {
    SpodClass status = SpodClass::Undetermined;
    std::string reason;
};

/// Summable when the reduced POD family (Gamma, reduced_upsilon) is summable;
/// NotSummable when Gamma = (l!)^sigma and the k = 1 law alone diverges
/// (c j^-rho with rho <= sigma); Undetermined otherwise.
SpodClassification spod_classify(const SPODSpec& spec);

/// v' = {alpha (j-1) + k : j in v, 1 <= k <= nu_j}, sorted. v holds distinct
/// 1-based coordinates; nu[i] belongs to v[i].
std::vector<std::size_t> reduction_map(std::span<const std::size_t> v, std::span<const std::size_t> nu,
                                       std::size_t alpha);

/// The POD sequence Upsilon'_{j'} = max_k Upsilon_{j,k}^(1/k) on each block
/// alpha (j-1) < j' <= alpha j. Explicit grids give an explicit sequence of
/// length alpha * (longest support). Decay grids c_k j^-rho_k give the blocked
/// law C_max ceil(j'/alpha)^-rho with rho = min_k rho_k / k, which bounds every
/// block maximum; explicit rows mixed into a decay grid raise C_max as needed.
/// Throws NotSummable when that rho is <= 1.
WeightSequence reduced_upsilon(const SPODSpec& spec);

struct DominationSample {
    std::vector<std::size_t> v;
    std::vector<std::size_t> nu;
    double m = 1.0;
    double log_lhs = 0.0; // log(|nu|! m^|v| prod Upsilon_{j, nu_j})
    double log_rhs = 0.0; // log(|v'|! m^|v'| prod Upsilon'_{j'})
};

/// Evaluates both sides of the per-term comparison for one (v, nu, m).
DominationSample domination_terms(const SPODSpec& spec, const WeightSequence& reduced,
                                  std::span<const std::size_t> v, std::span<const std::size_t> nu, double m);

struct SpodSummability {
    bool holds = false;
    Interval value; // sum_j sum_k Upsilon_{j,k}^(1/k); hi = +inf when it diverges
    std::size_t samples_checked = 0;
    std::size_t violations = 0;
    std::optional<DominationSample> worst; // sample with the largest lhs - rhs
};

/// Evaluates the double sum and, when it is finite, checks per-term
/// domination on `samples` random (v, nu) with m drawn from [1, 10]. A
/// violation is counted only beyond a relative slack of 1e-12.
SpodSummability spod_summability(const SPODSpec& spec, std::uint64_t seed = 1, std::size_t samples = 1000);

/// Explicit constants of the SPOD growth bracket for
/// Gamma_l = (l!)^sigma and Upsilon_{j,k} = c_k j^(-k rho).
struct SpodGrowthConstants {
    std::size_t alpha = 1;
    double rho = 0.0;
    double sigma = 0.0;
    std::vector<double> c_values;  // c_1 .. c_alpha
    double c_max = 0.0;            // max_k c_k^(1/k)
    double c_prime = 1.0;          // C'_{alpha, rho} >= 1
    double c_alpha_rho = 0.0;      // e alpha^rho C'
    std::uint64_t ell_star = 0;    // ceil((2 C_{alpha,rho} c_max)^(1/(rho-sigma)))
    double lower_const = 0.0;      // (rho - sigma) c_1^(1/(rho-sigma))
    double upper_const = 0.0;      // (rho - sigma) (C_{alpha,rho} c_max)^(1/(rho-sigma))

    /// Throws NotSummable for rho <= sigma, InvalidArgument for bad inputs.
    static SpodGrowthConstants make(std::size_t alpha, double rho, double sigma, std::vector<double> c_values);

    /// The SPOD family these constants describe.
    SPODSpec family() const;
};

/// C'_{alpha,rho} = max(1, alpha sup_{J >= 1} (J/alpha)^(rho-1) zeta(rho, floor(J/alpha) + 1)):
/// the supremum over J <= 10 alpha is evaluated with upper tail enclosures,
/// and beyond it the bound 1/(rho-1) + 1/10 is used.
double spod_c_prime(std::size_t alpha, double rho);

struct SpodGrowthPoint {
    double m = 0.0;
    double lower = 0.0;          // normalized log of the embedded k = 1 lower series
    double upper = 0.0;          // normalized log of S(m, l_*) + 2e * tail
    std::optional<double> truncated; // normalized spod_truncated_sum, when requested
};

struct SpodGrowthReport {
    SpodGrowthConstants constants;
    std::vector<SpodGrowthPoint> points;
};

SpodGrowthReport spod_growth_bracket(const SpodGrowthConstants& constants, std::span<const double> m_grid);

/// Adds the normalized spod_truncated_sum of constants.family() at (d, L).
SpodGrowthReport spod_growth_bracket(const SpodGrowthConstants& constants, std::span<const double> m_grid,
                                     std::size_t d, std::size_t max_order);

struct ProbeRow {
    double m = 0.0;
    std::size_t max_order = 0;
    double log_value = kNegInf;  // log sum_{l<=L} (k l)! m^l e_l(Upsilon_1..Upsilon_d)
    double log_device = kNegInf; // same with (l!)^k in place of (k l)!
};

struct ProbeReport {
    std::size_t k = 1;
    std::size_t d = 0;
    std::vector<ProbeRow> rows; // grouped by m, then L = 1 .. L_max
    /// Per grid point: log_value strictly increases with L.
    std::vector<bool> strictly_increasing;
    /// log_value >= log_device on every row.
    bool device_holds = true;
};

/// Exploration of the growth of the order-k sum for a raw sequence. Reports
/// monotone growth evidence only; it never classifies the sum as divergent.
ProbeReport divergence_probe(std::size_t k, const RawSequence& seq, std::span<const double> m_grid,
                             std::size_t max_order, std::size_t d);

} // namespace podsum
