#include "podsum/errors.hpp"
#include "podsum/montecarlo.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace podsum;

TEST_CASE("exact distinctness probability")
{
    CHECK(distinctness_exact(WeightSequence::explicit_values({0.3, 0.1}), 1) == 1.0);
    // 2 * 0.75 * 0.25
    CHECK(distinctness_exact(WeightSequence::explicit_values({3.0, 1.0}), 2) == doctest::Approx(0.375));
    CHECK(distinctness_exact(WeightSequence::explicit_values({1, 1, 1, 1, 1}), 3) == doctest::Approx(0.48));
    CHECK(distinctness_exact(WeightSequence::explicit_values({1.0, 0.0, 2.0}), 3) == 0.0);

    auto g = oracle::rng(51);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 2 + oracle::below(g, 6);
        std::vector<double> w(n);
        for (auto& x : w) {
            x = oracle::uniform(g, 0.01, 1.0);
        }
        const unsigned ell = 1 + static_cast<unsigned>(oracle::below(g, std::min<std::size_t>(n, 4)));
        CHECK(distinctness_exact(WeightSequence::explicit_values(w), ell) ==
              doctest::Approx(static_cast<double>(oracle::distinct_probability(w, ell))).epsilon(1e-12));
    }
}

TEST_CASE("Monte Carlo estimate agrees with the exact value")
{
    McConfig cfg;
    cfg.seq = WeightSequence::explicit_values({1, 1, 1, 1, 1});
    cfg.ell = 3;
    cfg.seed = 3;
    const McEstimate e = distinctness_estimate(cfg);
    CHECK(e.samples == cfg.n_samples);
    CHECK(std::abs(e.estimate - 0.48) <= 3 * e.standard_error);
    CHECK(e.standard_error == doctest::Approx(std::sqrt(e.estimate * (1 - e.estimate) / 1e5)));

    std::vector<double> inv_sq(20);
    for (std::size_t j = 0; j < 20; ++j) {
        inv_sq[j] = 1.0 / static_cast<double>((j + 1) * (j + 1));
    }
    cfg.seq = WeightSequence::explicit_values(inv_sq);
    cfg.n_samples = 1'000'000;
    const double exact = distinctness_exact(cfg.seq, 3);
    const McEstimate big = distinctness_estimate(cfg);
    CHECK(std::abs(big.estimate - exact) <= 3 * big.standard_error);
    CHECK(big.standard_error < 1e-3);

    cfg.ell = 1;
    cfg.n_samples = 1000;
    CHECK(distinctness_estimate(cfg).estimate == 1.0);
}

TEST_CASE("Monte Carlo is deterministic and independent of the worker count")
{
    McConfig cfg;
    cfg.seq = WeightSequence::explicit_values({0.5, 0.2, 0.2, 0.05, 0.05});
    cfg.ell = 2;
    cfg.n_samples = 50'000;
    cfg.seed = 11;
    cfg.workers = 1;
    const McEstimate one = distinctness_estimate(cfg);
    cfg.workers = 7;
    const McEstimate seven = distinctness_estimate(cfg);
    CHECK(one.hits == seven.hits);
    cfg.workers = 0;
    CHECK(distinctness_estimate(cfg).hits == one.hits);
    cfg.seed = 12;
    CHECK(distinctness_estimate(cfg).hits != one.hits);
}

TEST_CASE("Monte Carlo input validation")
{
    McConfig cfg;
    cfg.seq = WeightSequence::poly_decay(1.0, 2.0);
    CHECK_THROWS_AS(distinctness_estimate(cfg), InvalidArgument);
    cfg.seq = WeightSequence::zero();
    CHECK_THROWS_AS(distinctness_estimate(cfg), InvalidArgument);
    cfg.seq = WeightSequence::explicit_values({1.0});
    cfg.ell = 0;
    CHECK_THROWS_AS(distinctness_estimate(cfg), InvalidArgument);
}

TEST_CASE("conditional-binomial chain")
{
    auto g = oracle::rng(52);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 4 + oracle::below(g, 16);
        std::vector<double> w(d);
        for (auto& x : w) {
            x = oracle::uniform(g, 0.05, 1.0);
        }
        const std::size_t ell = 2 + oracle::below(g, 3);
        const ChainReport r = chain_bound_check(WeightSequence::explicit_values(w), ell);
        CHECK(r.dominated);
        CHECK(r.identity_holds);
        CHECK(r.identity_residual <= 1e-10);
        CHECK(r.exact <= r.product_bound * (1 + 1e-12));
        CHECK(r.product_bound == doctest::Approx(std::exp(r.log_product_bound)));
    }
    CHECK_THROWS_AS(chain_bound_check(WeightSequence::explicit_values({1.0, 0.0}), 2), ZeroTail);
}
