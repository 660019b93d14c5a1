#include "unimodal/interval.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace unimodal;

namespace {

bool contains_double(const IntervalReal& x, double v)
{
    return mpfr_cmp_d(x.lo(), v) <= 0 && mpfr_cmp_d(x.hi(), v) >= 0;
}

// Random expression tree evaluated in parallel in double and in intervals.
struct Pair {
    IntervalReal iv;
    double d;
};

Pair random_expr(std::mt19937_64& rng, int depth, mpfr_prec_t prec)
{
    std::uniform_int_distribution<int> op(0, depth > 0 ? 7 : 0);
    std::uniform_real_distribution<double> leaf(0.25, 4.0);
    int o = op(rng);
    if (o == 0) {
        double v = leaf(rng);
        return {IntervalReal::from_double(v, prec), v};
    }
    Pair a = random_expr(rng, depth - 1, prec);
    Pair b = random_expr(rng, depth - 1, prec);
    switch (o) {
    case 1: return {a.iv + b.iv, a.d + b.d};
    case 2: return {a.iv - b.iv, a.d - b.d};
    case 3: return {a.iv * b.iv, a.d * b.d};
    case 4: return {a.iv / (abs(b.iv) + IntervalReal(1, prec)), a.d / (std::abs(b.d) + 1)};
    case 5: return {exp(a.iv / IntervalReal(8, prec)), std::exp(a.d / 8)};
    case 6: return {sqrt(abs(a.iv)), std::sqrt(std::abs(a.d))};
    default: return {cos(a.iv) + sin(b.iv), std::cos(a.d) + std::sin(b.d)};
    }
}

} // namespace

TEST(Interval, ExactConstructionFromIntegers)
{
    IntervalReal x(7, 64);
    EXPECT_EQ(x.width(), 0);
    EXPECT_TRUE(x.contains(7L));
    IntervalReal big = IntervalReal::from_mpz(mpz_class("123456789012345678901234567890"), 64);
    EXPECT_TRUE(big.contains(mpz_class("123456789012345678901234567890")));
    EXPECT_FALSE(big.contains(mpz_class("123456789012345678901234567891")) && big.width() == 0);
}

TEST(Interval, RationalEnclosure)
{
    IntervalReal t = IntervalReal::from_mpq(mpq_class(1, 3), 64);
    EXPECT_TRUE(t.contains(mpq_class(1, 3)));
    EXPECT_FALSE(t.contains(mpq_class(1, 2)));
    EXPECT_GT(t.width(), 0);
}

TEST(Interval, DecimalParsingEnclosesValue)
{
    IntervalReal d = IntervalReal::from_decimal("0.1", 64);
    EXPECT_TRUE(d.contains(mpq_class(1, 10)));
    IntervalReal e = IntervalReal::from_decimal("1.4e27", 128);
    EXPECT_TRUE(e.contains(mpz_class("1400000000000000000000000000")));
}

TEST(Interval, RandomExpressionsContainDoubleEstimate)
{
    std::mt19937_64 rng(12345);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        Pair p = random_expr(rng, 4, 200);
        if (!std::isfinite(p.d)) continue;
        // the double result carries its own rounding error; allow a few ulps
        double slack = 1e-12 * (1 + std::abs(p.d));
        IntervalReal widened = p.iv + hull(IntervalReal::from_double(-slack, 200), IntervalReal::from_double(slack, 200));
        EXPECT_TRUE(contains_double(widened, p.d)) << i << " " << p.iv.to_string(20) << " vs " << p.d;
        ++checked;
    }
    EXPECT_GT(checked, 900);
}

TEST(Interval, DivisionByIntervalContainingZeroIsEntire)
{
    IntervalReal num(1, 64);
    IntervalReal den = hull(IntervalReal(-1, 64), IntervalReal(1, 64));
    IntervalReal q = num / den;
    EXPECT_FALSE(q.is_finite());
}

TEST(Interval, PrecisionRefinementNeverWidens)
{
    for (mpfr_prec_t p = 64; p <= 1024; p *= 2) {
        IntervalReal lo = exp(sqrt(IntervalReal(2, p)) * pi_interval(p));
        IntervalReal hi = exp(sqrt(IntervalReal(2, 2 * p)) * pi_interval(2 * p));
        EXPECT_LE(hi.width(), lo.width());
        EXPECT_TRUE(overlaps(lo, hi));
    }
}

TEST(Interval, PiAndSqrtPi)
{
    const IntervalReal& pi = pi_interval(128);
    EXPECT_TRUE(contains_double(pi, M_PI) || std::abs(pi.mid_double() - M_PI) < 1e-15);
    IntervalReal sp = sqrt_pi_interval(128);
    EXPECT_TRUE(overlaps(sqr(sp), pi));
    EXPECT_LT(pi.relative_width(), 1e-35);
}

TEST(Interval, TrigonometryEnclosesExtrema)
{
    // [3, 3.3] contains pi where cos attains -1
    IntervalReal x = hull(IntervalReal(3, 64), IntervalReal::from_decimal("3.3", 64));
    IntervalReal c = cos(x);
    EXPECT_TRUE(c.contains(-1L));
    IntervalReal s = sin(hull(IntervalReal(1, 64), IntervalReal(2, 64)));
    EXPECT_TRUE(s.contains(1L));
}

TEST(Interval, RootsOfUnityAtQuarterPointsAreExact)
{
    EXPECT_EQ(cos_2pi(mpq_class(1, 4), 64).width(), 0);
    EXPECT_TRUE(cos_2pi(mpq_class(1, 2), 64).contains(-1L));
    EXPECT_TRUE(sin_2pi(mpq_class(3, 4), 64).contains(-1L));
    EXPECT_TRUE(cos_2pi(mpq_class(7, 1), 64).contains(1L));
    IntervalReal c = cos_2pi(mpq_class(1, 6), 128);
    EXPECT_TRUE(c.contains(mpq_class(1, 2)));
    EXPECT_LT(c.width(), 1e-35);
}

TEST(Interval, ComplexUnitModulus)
{
    ComplexEnclosure z = ComplexEnclosure::unit(mpq_class(5, 24), 128);
    EXPECT_TRUE(z.abs_sq().contains(1L));
}

TEST(Interval, OrderPredicates)
{
    IntervalReal a(1, 64), b(2, 64);
    EXPECT_TRUE(certainly_less(a, b));
    EXPECT_FALSE(certainly_less(b, a));
    EXPECT_TRUE(certainly_less_equal(a, a));
    EXPECT_EQ(ceil_upper(IntervalReal::from_mpq(mpq_class(7, 2), 64)), 4);
    EXPECT_EQ(floor_lower(IntervalReal::from_mpq(mpq_class(7, 2), 64)), 3);
}
