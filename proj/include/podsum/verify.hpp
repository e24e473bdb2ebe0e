#pragma once

#include "podsum/config.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace podsum::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string observed;
    std::string required;
};

struct Options {
    std::uint64_t seed = 1;
    /// Random instances per property check.
    std::size_t n = 1000;
    /// Draws per Monte Carlo run.
    std::size_t mc_samples = 100'000;
    /// Optional user family; adds checks on that family's own weights.
    std::optional<FamilySpec> spec;
};

/// The chain e_l <= fine <= coarse of the lemma2 bounds, the telescoping identity,
/// and dominance of theorem1_bound over truncated sums.
std::vector<CheckResult> lemma2_suite(const Options& opts);

/// Injectivity of the reduction map, per-term and aggregate domination,
/// and agreement of the SPOD table with direct enumeration.
std::vector<CheckResult> spod_reduction_suite(const Options& opts);

/// Monte Carlo agreement with the exact distinctness probability, chain
/// dominance, and seed determinism.
std::vector<CheckResult> mc_suite(const Options& opts);

inline constexpr std::string_view kSuiteNames[] = {"lemma2", "spod-reduction", "mc", "all"};

/// Runs one named suite ("all" runs every suite in order). Throws
/// InvalidArgument for unknown names.
std::vector<CheckResult> run_suite(std::string_view suite, const Options& opts);

/// log of sum over (v, nu), v in {1..d}, of Gamma_|nu| m^|v| prod Upsilon_{j,nu_j}
/// restricted to |v| <= max_order, by direct enumeration. Exponential cost.
double spod_enumerate(const SPODSpec& spec, double m, std::size_t d, std::size_t max_order);

} // namespace podsum::verify
