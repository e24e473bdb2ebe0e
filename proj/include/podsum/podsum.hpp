#pragma once

#include "podsum/weights.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace podsum {

/// Whether S_gamma(m) is finite for every m > 0, decided from the structure of
/// the family: finite supports always sum; (l!)^sigma against a c j^-rho law
/// sums iff rho > sigma.
struct Classification {
    bool summable = true;
    std::string reason;
};

Classification classify(const PODSpec& spec);

/// log(Gamma_0 + sum_{l=1}^{L} Gamma_l m^l e_l(Upsilon_1..Upsilon_d)). Every
/// dropped term is nonnegative, so this is a certified lower bound on S_gamma(m).
double truncated_sum(const PODSpec& spec, double m, std::size_t d, std::size_t max_order);

struct Truncation {
    std::size_t d = 0;
    std::size_t max_order = 0;
    double rel_change = 0.0; // last relative change of the linear-domain value
};

struct AdaptiveResult {
    double log_value = kNegInf; // certified lower bound on log S_gamma(m)
    Truncation truncation;
};

inline constexpr std::size_t kDefaultMaxPrefix = 1'000'000;

/// Refines (d, L) until the relative change between successive refinements is
/// below rtol twice in a row. d doubles each step; L grows by 8 (or doubles
/// while the top order still carries more than rtol of the sum), capped at d.
///
/// Beyond the exact head over {1..d}, the value includes the subsets with one
/// or two coordinates past d, using lower enclosures of the tail power sums,
/// so it stays a certified lower bound while converging like d^-3 instead of
/// d^-1 for decaying laws. Finite-support families are evaluated exactly.
///
/// Throws NotSummable if classify() fails, BudgetExceeded past max_d.
AdaptiveResult adaptive_sum(const PODSpec& spec, double m, double rtol = 1e-8,
                            std::size_t max_d = kDefaultMaxPrefix);

/// Enclosure of log prod_j (1 + m Upsilon_j), the product-weight sum.
Interval product_weight_sum(const WeightSequence& seq, double m);

struct NaiveBound {
    enum class Status { Finite, Diverged, Indeterminate };
    Status status = Status::Finite;
    double log_value = kPosInf; // -log(1 - m zeta_1) when Finite
};

/// The geometric-series bound sum_l (m zeta_1)^l for Gamma_l = l!.
/// Throws InvalidArgument for any other order profile.
NaiveBound naive_bound(const PODSpec& spec, double m);

struct Theorem1Bound {
    double log_partial = kNegInf; // orders 0..L of the bounding series
    double log_value = kPosInf;   // partial plus certified remainder, +inf if uncertified
    bool certified = false;
    std::optional<std::size_t> ratio_certified_from;
    std::size_t max_order = 0;
};

/// log of Gamma_0 + sum_{l<=L} e^{l+1} Gamma_l m^l prod_{J<=l} max(Upsilon_J, zeta_{J+1}/J),
/// plus a remainder certificate: zero or an exact finite sum when the series
/// terminates, otherwise the last term once the term ratio is provably below
/// 1/2 for every later order. Without such a certificate log_value is +inf
/// ("unbounded at L").
Theorem1Bound theorem1_bound(const PODSpec& spec, double m, std::size_t max_order);

/// Smallest L at which theorem1_bound can certify its remainder, if any.
std::optional<std::size_t> theorem1_certificate_order(const PODSpec& spec, double m);

struct SummabilityCertificate {
    bool summable = true;
    std::string reason;
    /// (l, r_l) with r_l = (prod_{J<=l} max(J Upsilon_J, zeta_{J+1}))^{1/l}.
    std::vector<std::pair<std::size_t, double>> root_test;
    /// (N, log prod_{j<=N} (1 + m Upsilon_j)) for N = 10, 100, ..., 10^6;
    /// only filled for non-summable sequences.
    std::vector<std::pair<std::size_t, double>> product_witness;
};

/// Classifier for Gamma_l = l!: summable iff sum_j Upsilon_j < infinity.
SummabilityCertificate summability_classifier(const PODSpec& spec, std::span<const std::size_t> orders,
                                              double m = 1.0);
SummabilityCertificate summability_classifier(const OrderProfile& gamma, const RawSequence& seq,
                                              std::span<const std::size_t> orders, double m = 1.0);

/// First N with log prod_{j<=N} (1 + m Upsilon_j) > log_threshold, scanning at
/// most max_terms coordinates.
std::optional<std::size_t> product_witness_index(const RawSequence& seq, double m, double log_threshold,
                                                 std::size_t max_terms);

/// One evaluation record at a single m.
struct BoundReport {
    double m = 0.0;
    double exact_lo = kNegInf; // certified lower bound on log S_gamma(m)
    bool exact_converged = true;
    Truncation truncation;
    Theorem1Bound theorem1;
    std::optional<NaiveBound> naive; // only for Gamma_l = l!
    Classification classification;
};

BoundReport evaluate_bounds(const PODSpec& spec, double m, std::size_t max_order, double rtol = 1e-8,
                            std::size_t max_d = kDefaultMaxPrefix);

} // namespace podsum
