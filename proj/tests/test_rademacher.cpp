#include "unimodal/exact_counts.hpp"
#include "unimodal/rademacher.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace unimodal;

namespace {

const CountTable& p2_ref()
{
    static CountTable t = p2_table(4000);
    return t;
}

const CountTable& u_ref()
{
    static CountTable t = u_from_p2(p2_ref(), 4000);
    return t;
}

} // namespace

TEST(Tail, ConstantWhenIndicatorVanishes)
{
    // pi sqrt(12*100-1)/3 ~ 36.3, so M = 40 switches the second term off
    IntervalReal f = tail_f(40, 100, 128);
    EXPECT_TRUE(overlaps(f, pow(pi_interval(128), 5ul) / 108));
    EXPECT_TRUE(certainly_less(f, tail_f(20, 100, 128)));
}

TEST(Tail, RejectsBadInput)
{
    EXPECT_THROW(tail_f(-1, 10, 64), std::invalid_argument);
    EXPECT_THROW(tail_f(5, 0, 64), std::invalid_argument);
}

TEST(P2Enclosure, ContainsExactValuesAboveThreshold)
{
    P2Evaluator eval(75, 160, 1000);
    for (long n = 1001; n <= 1400; ++n) {
        Enclosure e = eval(n);
        ASSERT_TRUE(e.contains(p2_ref().values[static_cast<std::size_t>(n)])) << n;
        EXPECT_EQ(e.provenance.kind, Provenance::Kind::TruncationM);
    }
}

TEST(P2Enclosure, ContainsExactValuesForSmallAndCoarseTruncations)
{
    for (long M : {1L, 3L, 10L, 40L}) {
        P2Evaluator eval(M, 192, 0);
        for (long n : {1L, 2L, 7L, 50L, 333L, 2021L, 3999L}) {
            Enclosure e = eval(n);
            EXPECT_TRUE(e.contains(p2_ref().values[static_cast<std::size_t>(n)])) << "M=" << M << " n=" << n;
        }
    }
}

TEST(P2Enclosure, WidthNeverBelowConstantTail)
{
    // the tail bound contains pi^5/108 for every (M, n), so the enclosure width
    // is at least 2 pi^5/108 and need not isolate a single integer
    // small n keeps rounding width far below the tail
    Enclosure e = p2_enclosure(200, 200, 256, 0);
    IntervalReal w = e.upper - e.lower;
    EXPECT_TRUE(certainly_less_equal(2 * pow(pi_interval(128), 5ul) / 108 - IntervalReal(1, 128) / 1000, w));
}

TEST(P2Enclosure, ExactTableBelowThreshold)
{
    Enclosure e = p2_enclosure(75, 500, 128);
    EXPECT_EQ(e.provenance.kind, Provenance::Kind::ExactTable);
    EXPECT_TRUE(e.contains(p2_ref().values[500]));
    EXPECT_EQ(e.lower.width(), 0);
}

TEST(UEnclosure, SandwichesExactValues)
{
    auto eval = std::make_shared<const P2Evaluator>(75, 160, 1000);
    P2Memo memo(eval);
    auto src = [&](long a) -> const Enclosure& { return memo.get(a); };
    for (long n = 1001; n <= 3000; n += 7) {
        Enclosure e = u_enclosure_with(30, n, src, 75, 160);
        ASSERT_TRUE(e.contains(u_ref().values[static_cast<std::size_t>(n)])) << n;
        EXPECT_LE(mpfr_cmp(e.lower.lo(), e.upper.hi()), 0);
    }
}

TEST(UEnclosure, SmallLStillBrackets)
{
    for (long L : {0L, 1L, 5L}) {
        Enclosure e = u_enclosure(L, 75, 1800, 160);
        EXPECT_TRUE(e.contains(u_ref().values[1800])) << L;
    }
}

TEST(Certificates, TuranVerifiedJustAboveThreshold)
{
    for (long n : {1001L, 1500L, 2999L}) EXPECT_EQ(turan_certificate(30, 75, n, 128).status, CertificateStatus::Verified) << n;
}

TEST(Certificates, TuranInconclusiveWhenTruncationTooShort)
{
    // With L = 30 the truncation width p2(n - 1891) overwhelms the Turan margin near n = 10^4.
    CertificateResult r = turan_certificate(30, 75, 10000, 128);
    EXPECT_EQ(r.status, CertificateStatus::Inconclusive);
    EXPECT_TRUE(r.negative);
    EXPECT_EQ(turan_certificate(80, 75, 10000, 128).status, CertificateStatus::Verified);
    EXPECT_EQ(turan_certificate(80, 75, 100000, 128).status, CertificateStatus::Verified);
}

TEST(Certificates, LogConcavityAndConvexity)
{
    auto eval = std::make_shared<const P2Evaluator>(75, 128, 1000);
    P2Memo memo(eval);
    auto src = [&](long a) -> const Enclosure& { return memo.get(a); };
    auto u = [&](long n) { return u_enclosure_with(30, n, src, 75, 128); };
    for (long n : {1100L, 2500L}) {
        EXPECT_EQ(logconcavity_certificate_from(u(n - 1), u(n), u(n + 1)).status, CertificateStatus::Verified);
        for (long j : {1L, 4L, 20L})
            EXPECT_EQ(convexity_certificate_from(u(n), u(n - j), u(n - 2 * j)).status, CertificateStatus::Verified);
    }
}

TEST(Certificates, ExactInputsReproduceExactSign)
{
    // With exact enclosures the expression equals the exact Turan polynomial in u.
    auto exact = [&](long n) {
        Enclosure e;
        e.lower = IntervalReal::from_mpz(u_ref().values[static_cast<std::size_t>(n)], 512);
        e.upper = e.lower;
        return e;
    };
    for (long n : {10L, 26L, 27L, 28L, 32L, 33L, 200L}) {
        auto r = turan_certificate_from(exact(n - 1), exact(n), exact(n + 1), exact(n + 2));
        mpz_class a0 = u_ref().values[n - 1], a1 = u_ref().values[n], a2 = u_ref().values[n + 1], a3 = u_ref().values[n + 2];
        mpz_class f = 4 * (a1 * a1 - a0 * a2) * (a2 * a2 - a1 * a3) - (a1 * a2 - a0 * a3) * (a1 * a2 - a0 * a3);
        EXPECT_EQ(r.status == CertificateStatus::Verified, f >= 0) << n;
    }
}

TEST(Probe, WithinStatedRemainder)
{
    for (long n : {100L, 400L}) {
        ProbeResult p = exact_formula_probe(n, 2, 1e-6, 128);
        double diff = std::abs(p.value - u_ref().values[static_cast<std::size_t>(n)].get_d());
        EXPECT_LE(diff, p.remainder + p.quad_error) << n;
        EXPECT_FALSE(p.certified);
        EXPECT_TRUE(overlaps(p.enclosure, IntervalReal::from_mpz(u_ref().values[static_cast<std::size_t>(n)], 128)));
    }
}

TEST(Probe, MoreTermsStayWithinRemainder)
{
    const long n = 200;
    double exact = u_ref().values[n].get_d();
    for (long kmax : {1L, 4L}) {
        ProbeResult p = exact_formula_probe(n, kmax);
        EXPECT_LE(std::abs(p.value - exact), p.remainder + p.quad_error) << kmax;
    }
}
