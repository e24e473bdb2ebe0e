#pragma once

#include "podsum/weights.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace podsum {

/// Log-domain elementary symmetric polynomials over prefixes of a sequence.
///
/// entry(j, l) = log e_l(Upsilon_1, ..., Upsilon_j) for 0 <= j <= d and
/// 0 <= l <= max_order, with log 0 stored as -inf. Built by the recursion
///   entry(j, l) = logaddexp(entry(j-1, l), log Upsilon_j + entry(j-1, l-1)).
class SymTable {
public:
    SymTable(std::size_t d, std::size_t max_order);

    std::size_t prefix_length() const noexcept { return d_; }
    std::size_t max_order() const noexcept { return max_order_; }

    double entry(std::size_t j, std::size_t order) const { return values_[j * width() + order]; }
    std::span<const double> row(std::size_t j) const { return {values_.data() + j * width(), width()}; }

private:
    friend SymTable build_sym_table(std::span<const double>, std::size_t);

    std::size_t width() const noexcept { return max_order_ + 1; }

    std::size_t d_;
    std::size_t max_order_;
    std::vector<double> values_;
};

/// Applies one step of the recursion in place: row holds log e_0..log e_L of
/// the previous prefix and is advanced by a term with logarithm log_term.
void sym_row_push(std::span<double> row, double log_term) noexcept;

SymTable build_sym_table(std::span<const double> terms, std::size_t max_order);
SymTable build_sym_table(const WeightSequence& seq, std::size_t d, std::size_t max_order);

/// Only the last row of build_sym_table, in O(max_order) memory.
std::vector<double> sym_row(std::span<const double> terms, std::size_t max_order);
std::vector<double> sym_row(const WeightSequence& seq, std::size_t d, std::size_t max_order);

/// log prod_{J=1}^{l} (Upsilon_J + zeta_{J+1} / (l - J + 1)), an upper bound on
/// log e_l of the whole (untruncated) sequence.
double lemma2_bound_fine(const WeightSequence& seq, std::size_t order);

/// (l + 1) + sum_{J=1}^{l} log max(Upsilon_J, zeta_{J+1} / J); never below the
/// fine bound.
double lemma2_bound_coarse(const WeightSequence& seq, std::size_t order);

/// Both bounds from one precomputed tail table (zeta_1 .. zeta_{l+1} at least).
double lemma2_bound_fine(const WeightSequence& seq, std::size_t order, std::span<const Interval> tails);
double lemma2_bound_coarse(const WeightSequence& seq, std::size_t order, std::span<const Interval> tails);

} // namespace podsum
