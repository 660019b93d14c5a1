#pragma once

// Special-function kernel: I-Bessel enclosures, Bernoulli numbers, Taylor
// coefficients of the cotangent kernel, Gamma at half integers, zeta(3/2).

#include "unimodal/interval.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace unimodal {

using ExactRational = mpq_class;

// binom(x, k) for rational x and k >= 0, exact.
inline mpq_class binomial_q(const mpq_class& x, unsigned long k)
{
    mpq_class r(1);
    for (unsigned long i = 0; i < k; ++i) {
        r *= (x - mpq_class(static_cast<long>(i)));
        r /= mpq_class(static_cast<long>(i + 1));
    }
    r.canonicalize();
    return r;
}

inline mpz_class factorial_z(unsigned long n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class binomial_z(unsigned long n, unsigned long k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers.

namespace detail {

inline const std::vector<mpq_class>& bernoulli_cache(std::size_t upto)
{
    static std::vector<mpq_class> table{mpq_class(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    // B_n = -1/(n+1) sum_{k<n} binom(n+1,k) B_k
    while (table.size() <= upto) {
        std::size_t n = table.size();
        mpq_class acc(0);
        if (n > 1 && n % 2 == 1) {
            table.emplace_back(0);
            continue;
        }
        mpz_class binom(1); // binom(n+1, 0)
        for (std::size_t k = 0; k < n; ++k) {
            if (table[k] != 0) acc += mpq_class(binom) * table[k];
            binom = binom * static_cast<unsigned long>(n + 1 - k) / static_cast<unsigned long>(k + 1);
        }
        mpq_class b = -acc / mpq_class(static_cast<long>(n + 1));
        b.canonicalize();
        table.push_back(b);
    }
    return table;
}

} // namespace detail

// B_n with the convention B_1 = -1/2.
inline mpq_class bernoulli(unsigned long n)
{
    if (n > 1 && n % 2 == 1) return 0;
    return detail::bernoulli_cache(n)[n];
}

// ---------------------------------------------------------------------------
// Gamma(m + 1/2) = sqrt(pi) * (2m)! / (4^m m!).

inline mpq_class gamma_half_integer_rational(unsigned long m)
{
    mpq_class r(factorial_z(2 * m), factorial_z(m));
    mpz_class four_m;
    mpz_ui_pow_ui(four_m.get_mpz_t(), 4, m);
    r /= mpq_class(four_m);
    r.canonicalize();
    return r;
}

inline IntervalReal gamma_half_integer(unsigned long m, mpfr_prec_t prec)
{
    return sqrt_pi_interval(prec) * IntervalReal::from_mpq(gamma_half_integer_rational(m), prec);
}

// Gamma(two_x / 2) for a positive half integer or integer argument.
inline IntervalReal gamma_half(long two_x, mpfr_prec_t prec)
{
    if (two_x <= 0) throw std::domain_error("gamma_half: nonpositive argument");
    if (two_x % 2 == 0) return IntervalReal::from_mpz(factorial_z(two_x / 2 - 1), prec);
    return gamma_half_integer(static_cast<unsigned long>((two_x - 1) / 2), prec);
}

// ---------------------------------------------------------------------------
// I-Bessel function I_kappa(x), kappa = two_kappa / 2 >= 0, x > 0.
//
// Ascending series sum_m (x/2)^(2m+kappa) / (m! Gamma(m+kappa+1)). All terms
// are positive and increasing in x, so the lower bound is a truncated sum at
// x.lo rounded down, and the upper bound is a sum at x.hi rounded up plus a
// geometric tail bound.

namespace detail {

// (x/2)^kappa / Gamma(kappa+1) at a point, as an interval.
inline IntervalReal bessel_leading(mpfr_srcptr x, long two_kappa, mpfr_prec_t prec)
{
    IntervalReal half = IntervalReal::hull(x, x, prec) / 2;
    IntervalReal p = pow(half, static_cast<unsigned long>(two_kappa / 2));
    if (two_kappa % 2 != 0) p *= sqrt(half);
    return p / gamma_half(two_kappa + 2, prec);
}

// Series at a point with one rounding direction. Returns the partial sum;
// when upper is set the tail bound is included.
inline void bessel_series_point(mpfr_ptr out, mpfr_srcptr x, long two_kappa, mpfr_prec_t work,
                                bool upper)
{
    const mpfr_rnd_t rnd = upper ? MPFR_RNDU : MPFR_RNDD;
    IntervalReal lead = bessel_leading(x, two_kappa, work);

    mpfr_t y, t, sum, ratio, tol;
    mpfr_inits2(work, y, t, sum, ratio, tol, static_cast<mpfr_ptr>(nullptr));
    mpfr_div_2ui(y, x, 1, rnd);
    mpfr_sqr(y, y, rnd);
    mpfr_set(t, upper ? lead.hi() : lead.lo(), rnd);
    mpfr_set(sum, t, rnd);

    for (unsigned long m = 0;; ++m) {
        // t_{m+1} = t_m * y * 2 / ((m+1)(2m+2+two_kappa))
        const unsigned long a = m + 1;
        const unsigned long b = 2 * m + 2 + static_cast<unsigned long>(two_kappa);
        mpfr_mul(t, t, y, rnd);
        mpfr_mul_2ui(t, t, 1, rnd);
        mpfr_div_ui(t, t, a, rnd);
        mpfr_div_ui(t, t, b, rnd);
        mpfr_add(sum, sum, t, rnd);

        // Ratio of the next term to t: y*2/((m+2)(2m+4+two_kappa)), decreasing in m.
        mpfr_mul_2ui(ratio, y, 1, MPFR_RNDU);
        mpfr_div_ui(ratio, ratio, a + 1, MPFR_RNDU);
        mpfr_div_ui(ratio, ratio, b + 2, MPFR_RNDU);
        if (mpfr_cmp_d(ratio, 0.5) < 0) {
            mpfr_mul_2si(tol, sum, -static_cast<long>(work) - 8, MPFR_RNDD);
            if (mpfr_cmp(t, tol) < 0) {
                // Remaining tail <= t * r/(1-r) <= t for r <= 1/2.
                if (upper) mpfr_add(sum, sum, t, MPFR_RNDU);
                break;
            }
        }
    }
    mpfr_set(out, sum, rnd);
    mpfr_clears(y, t, sum, ratio, tol, static_cast<mpfr_ptr>(nullptr));
}

} // namespace detail

inline IntervalReal bessel_I(long two_kappa, const IntervalReal& x, mpfr_prec_t prec)
{
    if (two_kappa < 0) throw std::domain_error("bessel_I: negative order");
    if (!x.certainly_positive()) throw std::domain_error("bessel_I: argument must be positive");
    const mpfr_prec_t work = prec + 32;
    IntervalReal r(prec);
    mpfr_t tmp;
    mpfr_init2(tmp, work);
    detail::bessel_series_point(tmp, x.lo(), two_kappa, work, false);
    mpfr_set(r.lo(), tmp, MPFR_RNDD);
    detail::bessel_series_point(tmp, x.hi(), two_kappa, work, true);
    mpfr_set(r.hi(), tmp, MPFR_RNDU);
    mpfr_clear(tmp);
    return r;
}

// I_{3/2}(w) = ((1 - 1/w) e^w + (1 + 1/w) e^-w) / sqrt(2 pi w).
inline IntervalReal bessel_I_three_halves_closed(const IntervalReal& w)
{
    if (!w.certainly_positive()) throw std::domain_error("bessel_I: argument must be positive");
    auto prec = w.precision();
    IntervalReal one(1, prec);
    IntervalReal inv = one / w;
    IntervalReal body = (one - inv) * exp(w) + (one + inv) * exp(-w);
    return body / sqrt(2 * pi_interval(prec) * w);
}

// ---------------------------------------------------------------------------
// zeta(3/2) by Euler-Maclaurin with a certified remainder.

inline IntervalReal zeta_three_halves(mpfr_prec_t prec)
{
    static std::map<mpfr_prec_t, std::unique_ptr<IntervalReal>> cache;
    static std::mutex mu;
    return detail::cached_constant(cache, mu, prec, [](mpfr_prec_t p) {
        const mpfr_prec_t work = p + 64;
        const long terms = std::max<long>(16, static_cast<long>(p) / 2);
        const long M = terms;
        IntervalReal sum(0, work);
        for (long n = 1; n <= terms; ++n) {
            IntervalReal nn(n, work);
            sum += IntervalReal(1, work) / (nn * sqrt(nn));
        }
        const long A = terms + 1;
        IntervalReal a(A, work);
        IntervalReal ra = sqrt(a);
        IntervalReal a_pow_minus_s = IntervalReal(1, work) / (a * ra); // A^{-3/2}
        // A^{1-s}/(s-1) = 2/sqrt(A)
        sum += IntervalReal(2, work) / ra;
        sum += a_pow_minus_s / 2;
        // sum_{k=1}^{M} B_2k/(2k)! (s)_{2k-1} A^{-s-2k+1}
        const mpq_class s(3, 2);
        mpq_class rising(s); // (s)_1
        IntervalReal apow = a_pow_minus_s * a; // A^{-s+1}, multiplied by A^-2 per step
        IntervalReal a2 = sqr(a);
        for (long k = 1; k <= M; ++k) {
            apow /= a2;
            mpq_class coef = bernoulli(2 * k) / mpq_class(factorial_z(2 * k)) * rising;
            sum += IntervalReal::from_mpq(coef, work) * apow;
            // (s)_{2k+1} = (s)_{2k-1} (s+2k-1)(s+2k)
            rising *= (s + 2 * k - 1) * (s + 2 * k);
        }
        // |R| <= 4 |(s)_{2M}| / (2 pi)^{2M} * A^{1-s-2M} / (s + 2M - 1)
        mpq_class rising2m(1);
        for (long i = 0; i < 2 * M; ++i) rising2m *= s + i;
        IntervalReal twopi = 2 * pi_interval(work);
        IntervalReal bound = 4 * IntervalReal::from_mpq(rising2m, work) /
                             pow(twopi, static_cast<unsigned long>(2 * M)) *
                             (IntervalReal(1, work) / (pow(a, static_cast<unsigned long>(M)) *
                                                       pow(a, static_cast<unsigned long>(M)) * ra)) /
                             IntervalReal::from_mpq(s + 2 * M - 1, work);
        IntervalReal r(p);
        IntervalReal lo = sum - bound;
        IntervalReal hi = sum + bound;
        mpfr_set(r.lo(), lo.lo(), MPFR_RNDD);
        mpfr_set(r.hi(), hi.hi(), MPFR_RNDU);
        return r;
    });
}

// ---------------------------------------------------------------------------
// Taylor coefficients of phi(x) = cot(pi/2 (x/sqrt6 + 1/2)) at x = 0, even
// part: phi^(2l)(0)/(2l)! = (2/3)^l (4/pi + sum_{m>l} c(2l, m)) with
// c(l, m) = (-4)^m B_2m / (2m)! (pi/4)^(2m-1) binom(2m-1, l).
// The m-tail beyond the cutoff is bounded by (2 pi/9) 4^-cutoff.

inline IntervalReal phi_coeff(unsigned long ell, mpfr_prec_t prec)
{
    const mpfr_prec_t work = prec + 32;
    const IntervalReal& pi = pi_interval(work);
    IntervalReal quarter_pi = pi / 4;
    IntervalReal qp2 = sqr(quarter_pi);
    IntervalReal sum = IntervalReal(4, work) / pi;

    // (pi/4)^(2m-1) for m = ell+1.
    IntervalReal qpow = pow(quarter_pi, 2 * (ell + 1) - 1);
    unsigned long m = ell + 1;
    for (;; ++m) {
        mpz_class four_m;
        mpz_ui_pow_ui(four_m.get_mpz_t(), 4, m);
        if (m % 2 == 1) four_m = -four_m;
        mpq_class coef = mpq_class(four_m) * bernoulli(2 * m) / mpq_class(factorial_z(2 * m)) *
                         mpq_class(binomial_z(2 * m - 1, 2 * ell));
        sum += IntervalReal::from_mpq(coef, work) * qpow;
        qpow *= qp2;
        // stop when (2 pi/9) 4^-m < 2^(-prec-8) |sum|; |sum| > 1/2 always here
        if (2 * m > static_cast<unsigned long>(prec) + 12) break;
    }
    IntervalReal tail = 2 * pi / 9;
    IntervalReal four(4, work);
    tail /= pow(four, m);
    IntervalReal widened(work);
    mpfr_sub(widened.lo(), sum.lo(), tail.hi(), MPFR_RNDD);
    mpfr_add(widened.hi(), sum.hi(), tail.hi(), MPFR_RNDU);
    mpq_class two_thirds(2, 3);
    mpq_class f(1);
    for (unsigned long i = 0; i < ell; ++i) f *= two_thirds;
    IntervalReal out = widened * IntervalReal::from_mpq(f, work);
    IntervalReal r(prec);
    mpfr_set(r.lo(), out.lo(), MPFR_RNDD);
    mpfr_set(r.hi(), out.hi(), MPFR_RNDU);
    return r;
}

// Round an interval outward to a lower precision.
inline IntervalReal round_to(const IntervalReal& x, mpfr_prec_t prec)
{
    IntervalReal r(prec);
    mpfr_set(r.lo(), x.lo(), MPFR_RNDD);
    mpfr_set(r.hi(), x.hi(), MPFR_RNDU);
    return r;
}

} // namespace unimodal
