#include "podsum/symfunc.hpp"

#include "podsum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace podsum {

namespace {

std::vector<double> prefix_terms(const WeightSequence& seq, std::size_t d)
{
    std::vector<double> terms(d);
    for (std::size_t j = 1; j <= d; ++j) {
        terms[j - 1] = seq.term(j);
    }
    return terms;
}

void check_order(std::size_t d, std::size_t max_order)
{
    if (max_order > d) {
        throw InvalidArgument("max_order (" + std::to_string(max_order) + ") exceeds prefix length d (" +
                              std::to_string(d) + ")");
    }
}

} // namespace

SymTable::SymTable(std::size_t d, std::size_t max_order)
    : d_(d), max_order_(max_order), values_((d + 1) * (max_order + 1), kNegInf)
{
}

void sym_row_push(std::span<double> row, double log_term) noexcept
{
    if (log_term == kNegInf) {
        return;
    }
    for (std::size_t l = row.size() - 1; l > 0; --l) {
        row[l] = log_add_exp(row[l], log_term + row[l - 1]);
    }
}

SymTable build_sym_table(std::span<const double> terms, std::size_t max_order)
{
    const std::size_t d = terms.size();
    check_order(d, max_order);
    SymTable table(d, max_order);
    const std::size_t w = max_order + 1;
    table.values_[0] = 0.0;
    for (std::size_t j = 1; j <= d; ++j) {
        std::copy_n(table.values_.begin() + (j - 1) * w, w, table.values_.begin() + j * w);
        sym_row_push({table.values_.data() + j * w, w}, safe_log(terms[j - 1]));
    }
    return table;
}

SymTable build_sym_table(const WeightSequence& seq, std::size_t d, std::size_t max_order)
{
    check_order(d, max_order);
    const auto terms = prefix_terms(seq, d);
    return build_sym_table(terms, max_order);
}

std::vector<double> sym_row(std::span<const double> terms, std::size_t max_order)
{
    check_order(terms.size(), max_order);
    std::vector<double> row(max_order + 1, kNegInf);
    row[0] = 0.0;
    for (double t : terms) {
        sym_row_push(row, safe_log(t));
    }
    return row;
}

std::vector<double> sym_row(const WeightSequence& seq, std::size_t d, std::size_t max_order)
{
    check_order(d, max_order);
    const auto terms = prefix_terms(seq, d);
    return sym_row(terms, max_order);
}

double lemma2_bound_fine(const WeightSequence& seq, std::size_t order, std::span<const Interval> tails)
{
    if (order == 0) {
        return 0.0;
    }
    if (tails.size() < order + 1) {
        throw InvalidArgument("tail table too short for the requested order");
    }
    double acc = 0.0;
    for (std::size_t J = 1; J <= order; ++J) {
        const double factor = seq.term(J) + tails[J].hi / static_cast<double>(order - J + 1);
        acc += safe_log(factor);
    }
    return acc;
}

double lemma2_bound_coarse(const WeightSequence& seq, std::size_t order, std::span<const Interval> tails)
{
    if (order == 0) {
        return 0.0;
    }
    if (tails.size() < order + 1) {
        throw InvalidArgument("tail table too short for the requested order");
    }
    double acc = static_cast<double>(order + 1);
    for (std::size_t J = 1; J <= order; ++J) {
        acc += safe_log(std::max(seq.term(J), tails[J].hi / static_cast<double>(J)));
    }
    return acc;
}

double lemma2_bound_fine(const WeightSequence& seq, std::size_t order)
{
    const auto tails = seq.tail_sums(order + 1);
    return lemma2_bound_fine(seq, order, tails);
}

double lemma2_bound_coarse(const WeightSequence& seq, std::size_t order)
{
    const auto tails = seq.tail_sums(order + 1);
    return lemma2_bound_coarse(seq, order, tails);
}

} // namespace podsum
