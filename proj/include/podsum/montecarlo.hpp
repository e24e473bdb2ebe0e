#pragma once

#include "podsum/weights.hpp"

#include <cstddef>
#include <cstdint>

namespace podsum {

/// Sampling setup: P(j) = Upsilon_j / zeta_1 over an explicit finite support.
struct McConfig {
    std::size_t n_samples = 100'000;
    std::uint64_t seed = 1;
    std::size_t ell = 2;
    WeightSequence seq = WeightSequence::zero();
    /// Worker threads; 0 selects the hardware concurrency. The estimate does
    /// not depend on this value.
    std::size_t workers = 0;
};

/// Draws per batch; each batch has its own SplitMix64 stream seeded with
/// stream_seed(seed, batch index).
inline constexpr std::size_t kMcBatchSize = 8192;

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0; // sqrt(p (1 - p) / n)
    std::size_t hits = 0;
    std::size_t samples = 0;
};

/// Fraction of n_samples groups of ell i.i.d. draws that are pairwise distinct.
/// Throws InvalidArgument unless seq is explicit with zeta_1 > 0 and ell >= 1.
McEstimate distinctness_estimate(const McConfig& cfg);

/// ell! e_ell(Upsilon) / zeta_1^ell, the probability that ell draws are distinct.
double distinctness_exact(const WeightSequence& seq, std::size_t ell);

struct ChainReport {
    double exact = 0.0;            // distinctness_exact
    double log_product_bound = 0.0;
    double product_bound = 0.0;    // prod_J (1 + (l-J) Upsilon_J/zeta_J)(1 - Upsilon_J/zeta_J)^(l-J)
    bool dominated = false;        // exact <= product_bound (relative slack 1e-12)
    double identity_residual = 0.0; // |zeta_1^l prod_J (1 - Upsilon_J/zeta_J)^(l-J) / prod_J zeta_J - 1|
    bool identity_holds = false;   // residual <= 1e-10
};

/// Checks the conditional-binomial bound and the telescoping identity behind it.
/// Throws ZeroTail when zeta_J = 0 for some J <= ell (fewer than ell
/// positive-mass atoms), where the chain is undefined.
ChainReport chain_bound_check(const WeightSequence& seq, std::size_t ell);

} // namespace podsum
