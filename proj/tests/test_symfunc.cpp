#include "podsum/errors.hpp"
#include "podsum/symfunc.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace podsum;

TEST_CASE("symmetric table matches subset enumeration")
{
    auto g = oracle::rng(11);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t d = 1 + oracle::below(g, 12);
        const auto values = oracle::weights(g, d);
        const SymTable t = build_sym_table(values, d);
        for (std::size_t j = 0; j <= d; ++j) {
            const std::vector<double> prefix(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(j));
            for (std::size_t l = 0; l <= d; ++l) {
                const long double want = oracle::esym(prefix, static_cast<unsigned>(l));
                const double got = t.entry(j, l);
                if (want == 0.0L) {
                    CHECK(got == kNegInf);
                } else {
                    CHECK(oracle::rel_err(std::exp(static_cast<long double>(got)), want) <= 1e-12);
                }
            }
        }
        const auto row = sym_row(values, d);
        for (std::size_t l = 0; l <= d; ++l) {
            CHECK(row[l] == t.entry(d, l));
        }
    }
}

TEST_CASE("table shape and argument checks")
{
    const auto seq = WeightSequence::poly_decay(1.0, 2.0);
    const SymTable t = build_sym_table(seq, 10, 3);
    CHECK(t.prefix_length() == 10);
    CHECK(t.max_order() == 3);
    CHECK(t.entry(0, 0) == 0.0);
    CHECK(t.entry(0, 1) == kNegInf);
    CHECK(t.entry(2, 2) == doctest::Approx(std::log(0.25)));
    CHECK(t.row(10).size() == 4);
    CHECK_THROWS_AS(build_sym_table(seq, 3, 4), InvalidArgument);
}

TEST_CASE("sym_row_push skips zero terms")
{
    std::vector<double> row{0.0, std::log(2.0), kNegInf};
    sym_row_push(row, kNegInf);
    CHECK(row[1] == std::log(2.0));
    CHECK(row[2] == kNegInf);
    sym_row_push(row, std::log(3.0));
    CHECK(row[2] == doctest::Approx(std::log(6.0)));
    CHECK(row[1] == doctest::Approx(std::log(5.0)));
}

TEST_CASE("lemma2 chain on random explicit sequences")
{
    auto g = oracle::rng(12);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t d = 1 + oracle::below(g, 16);
        const auto values = oracle::weights(g, d);
        const auto seq = WeightSequence::explicit_values(values);
        for (std::size_t l = 1; l <= d; ++l) {
            const long double exact = oracle::esym(values, static_cast<unsigned>(l));
            const double fine = lemma2_bound_fine(seq, l);
            const double coarse = lemma2_bound_coarse(seq, l);
            if (exact > 0.0L) {
                CHECK(std::log(static_cast<double>(exact)) <= fine + 1e-12 * std::max(1.0, std::abs(fine)));
            }
            if (fine != kNegInf) {
                CHECK(fine <= coarse + 1e-12 * std::max(1.0, std::abs(coarse)));
            }
        }
    }
}

TEST_CASE("lemma2 bounds on a decay law dominate long prefixes")
{
    const auto seq = WeightSequence::poly_decay(1.0, 2.0);
    const auto row = sym_row(seq, 20000, 6);
    for (std::size_t l = 1; l <= 6; ++l) {
        CHECK(row[l] <= lemma2_bound_fine(seq, l));
        CHECK(lemma2_bound_fine(seq, l) <= lemma2_bound_coarse(seq, l));
    }
    CHECK(lemma2_bound_fine(seq, 0) == 0.0);
}
