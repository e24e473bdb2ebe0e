#include "podsum/errors.hpp"
#include "podsum/weights.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace podsum;

namespace {

void check_encloses(const Interval& iv, double truth, double rtol = 1e-12)
{
    CHECK(iv.lo <= truth);
    CHECK(truth <= iv.hi);
    CHECK(iv.width() <= rtol * iv.hi * (1 + 1e-3));
}

} // namespace

TEST_CASE("explicit sequences: terms, support and exact tails")
{
    const auto s = WeightSequence::explicit_values({0.5, 0.25, 0.0, 0.125, 0.0});
    CHECK(s.term(1) == 0.5);
    CHECK(s.term(4) == 0.125);
    CHECK(s.term(9) == 0.0);
    REQUIRE(s.support_size());
    CHECK(*s.support_size() == 4);
    CHECK(s.tail_sum(1).is_point());
    CHECK(s.tail_sum(1).lo == 0.875);
    CHECK(s.tail_sum(2).lo == 0.375);
    CHECK(s.tail_sum(5).lo == 0.0);
    CHECK(s.tail_sum(100).lo == 0.0);
    const auto tails = s.tail_sums(6);
    REQUIRE(tails.size() == 6);
    for (std::size_t J = 1; J <= 6; ++J) {
        CHECK(tails[J - 1].lo == s.tail_sum(J).lo);
    }
    CHECK_THROWS_AS(s.term(0), InvalidArgument);
    CHECK_THROWS_AS(WeightSequence::explicit_values({1.0, -0.5}), InvalidArgument);
    CHECK_THROWS_AS(WeightSequence::explicit_values({std::nan("")}), InvalidArgument);
}

TEST_CASE("zero sequences")
{
    const auto z = WeightSequence::zero();
    CHECK(z.is_zero());
    CHECK(z.term(3) == 0.0);
    CHECK(*z.support_size() == 0);
    CHECK(z.tail_sum(1).hi == 0.0);
    CHECK(WeightSequence::explicit_values({0.0, 0.0}).is_zero());
}

TEST_CASE("power-law tail enclosures contain the zeta values")
{
    check_encloses(WeightSequence::poly_decay(1.0, 2.0).tail_sum(1), oracle::kZeta2);
    check_encloses(WeightSequence::poly_decay(1.0, 1.5).tail_sum(1), oracle::kZeta1_5);
    check_encloses(WeightSequence::poly_decay(1.0, 3.0).tail_sum(1), oracle::kZeta3);
    check_encloses(WeightSequence::poly_decay(1.0, 2.0).tail_sum(5), oracle::kHurwitz2From5);
    check_encloses(WeightSequence::poly_decay(1.0, 1.01).tail_sum(1), oracle::kZeta1_01);
    check_encloses(WeightSequence::poly_decay(3.0, 2.0).tail_sum(1), 3.0 * oracle::kZeta2);
    check_encloses(power_tail(1.0, 2.0, 1, 1e-6), oracle::kZeta2, 1e-6);
    CHECK_THROWS_AS(power_tail(1.0, 2.0, 1, 1e-16), InvalidArgument);
}

TEST_CASE("poly_decay rejects non-summable exponents")
{
    CHECK_THROWS_AS(WeightSequence::poly_decay(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(WeightSequence::poly_decay(1.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(WeightSequence::poly_decay(-1.0, 2.0), InvalidArgument);
}

TEST_CASE("tail_sums agrees with tail_sum for decay laws")
{
    const auto s = WeightSequence::poly_decay(0.7, 2.3);
    const auto tails = s.tail_sums(50);
    for (std::size_t J = 1; J <= 50; ++J) {
        const Interval one = s.tail_sum(J);
        // both enclose the same number, so they must overlap
        CHECK(tails[J - 1].lo <= one.hi);
        CHECK(one.lo <= tails[J - 1].hi);
        CHECK(tails[J - 1].width() <= 1e-11 * tails[J - 1].hi);
    }
    // zeta_J - zeta_{J+1} = Upsilon_J
    CHECK(tails[9].mid() - tails[10].mid() == doctest::Approx(s.term(10)).epsilon(1e-9));
}

TEST_CASE("blocked sequences repeat each value block times")
{
    const auto b = WeightSequence::blocked(2.0, 2.0, 3);
    CHECK(b.term(1) == 2.0);
    CHECK(b.term(3) == 2.0);
    CHECK(b.term(4) == doctest::Approx(0.5));
    CHECK(b.term(7) == doctest::Approx(2.0 / 9.0));
    check_encloses(b.tail_sum(1), 3.0 * 2.0 * oracle::kZeta2, 1e-11);
    // tail from 5 drops four terms: 3 * 2 + 1 * 0.5
    check_encloses(b.tail_sum(5), 3.0 * 2.0 * oracle::kZeta2 - 6.5, 1e-11);
}

TEST_CASE("pointwise products")
{
    const auto p = WeightSequence::poly_decay(2.0, 2.0);
    const auto sq = p.product_with(p);
    REQUIRE(sq);
    CHECK(sq->term(3) == doctest::Approx(p.term(3) * p.term(3)));
    const auto e = WeightSequence::explicit_values({0.5, 0.5});
    const auto mixed = e.product_with(p);
    REQUIRE(mixed);
    CHECK(*mixed->support_size() == 2);
    CHECK(mixed->term(2) == doctest::Approx(0.5 * 0.5));
    CHECK(WeightSequence::zero().product_with(p)->is_zero());
    CHECK_FALSE(WeightSequence::blocked(1.0, 2.0, 2).product_with(p));
}

TEST_CASE("raw sequences admit non-summable laws")
{
    const auto harmonic = RawSequence::power_law(1.0, 1.0);
    CHECK(harmonic.term(4) == 0.25);
    CHECK_FALSE(harmonic.has_finite_sum());
    CHECK_FALSE(harmonic.as_weight_sequence());
    const auto fine = RawSequence::power_law(1.0, 2.0);
    CHECK(fine.has_finite_sum());
    CHECK(fine.as_weight_sequence());
    CHECK(RawSequence::power_law(0.0, 0.5).as_weight_sequence()->is_zero());
}

TEST_CASE("order profiles")
{
    const auto f = OrderProfile::factorial_power(1.0);
    CHECK(f.log_value(0) == 0.0);
    CHECK(f.log_value(5) == doctest::Approx(std::log(120.0)));
    CHECK(f.is_factorial_power(1.0));
    CHECK_FALSE(f.is_factorial_power(2.0));
    CHECK(*f.sigma() == 1.0);
    CHECK_FALSE(f.support_size());
    const auto half = OrderProfile::factorial_power(0.5);
    CHECK(half.log_value(4) == doctest::Approx(0.5 * std::log(24.0)));
    const auto e = OrderProfile::explicit_values({1.0, 2.0, 0.0});
    CHECK(e.log_value(1) == doctest::Approx(std::log(2.0)));
    CHECK(e.log_value(2) == kNegInf);
    CHECK(e.log_value(7) == kNegInf);
    CHECK(*e.support_size() == 1);
    const auto v = e.log_values(3);
    CHECK(v.size() == 4);
    CHECK_THROWS_AS(OrderProfile::explicit_values({}), InvalidArgument);
    CHECK_THROWS_AS(OrderProfile::factorial_power(-1.0), InvalidArgument);
}

TEST_CASE("SPOD family construction")
{
    const SPODSpec s(2, OrderProfile::factorial_power(1.0),
                     {WeightSequence::poly_decay(1.0, 2.0), WeightSequence::poly_decay(1.0, 4.0)});
    CHECK(s.alpha() == 2);
    CHECK(s.upsilon(2).term(2) == doctest::Approx(1.0 / 16.0));
    CHECK_THROWS_AS(s.as_pod(), InvalidArgument);
    CHECK_THROWS_AS(SPODSpec(2, OrderProfile::factorial_power(1.0), {WeightSequence::zero()}), InvalidArgument);
    const SPODSpec one(1, OrderProfile::factorial_power(1.0), {WeightSequence::explicit_values({0.5})});
    CHECK(one.as_pod().upsilon.term(1) == 0.5);
}
