#pragma once

// Effective asymptotic expansion of u(n): coefficients A(m), shifted
// coefficients A_s(m), error constants, cutoffs, two-sided envelopes, the
// N = 12 Turan threshold machinery and the shifted-convexity constants.

#include "unimodal/interval.hpp"
#include "unimodal/special_functions.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace unimodal {

struct ErrorLedger {
    int N = 0;
    IntervalReal E0, E1, E2, E3;
    std::vector<IntervalReal> S; // S(0..N+3)
    std::vector<long> R;         // R_N(m), m = 0..N+1
    IntervalReal C;              // C_N = E3 + 69.7
};

// Intermediate constants of a shifted set.
struct ShiftConstants {
    IntervalReal C1, C2, C3, C4, C5;
    mpz_class n1;  // n^[1](s)
    mpz_class n2;  // n^[2]_N(s)
};

struct CoefficientSet {
    int N = 0;
    long s = 0;
    mpfr_prec_t prec = 0;
    std::vector<IntervalReal> A; // A_s(0..N+1)
    IntervalReal C;              // C_N(s)
    mpz_class cutoff;            // n_N(s), or n_N when s = 0
    mpz_class nu;                // nu_N(s)
    std::optional<ShiftConstants> shift;
};

namespace detail {

inline IntervalReal dec(const char* text, mpfr_prec_t prec) { return IntervalReal::from_decimal(text, prec); }

inline IntervalReal q(const mpq_class& v, mpfr_prec_t prec) { return IntervalReal::from_mpq(v, prec); }

inline IntervalReal fact(unsigned long n, mpfr_prec_t prec) { return IntervalReal::from_mpz(factorial_z(n), prec); }

// x^(p/2) for x > 0 and integer p (any sign).
inline IntervalReal half_pow(const IntervalReal& x, long p)
{
    auto prec = x.precision();
    IntervalReal base = p >= 0 ? x : IntervalReal(1, prec) / x;
    unsigned long e = static_cast<unsigned long>(p >= 0 ? p : -p);
    IntervalReal r = pow(base, e / 2);
    if (e % 2) r *= sqrt(base);
    return r;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Multinomial sums C_{j,m}: sum over (l_1..l_{N+1}) with sum l_k = j and
// sum k l_k = m of binom(j; l) prod_k ((-1)^(k+1) binom(1/2, k+1))^(l_k).

inline mpq_class multinomial_C_exact(int j, int m, int N)
{
    if (j < 0 || m < j || m > N + 1) throw std::invalid_argument("multinomial_C: need 0 <= j <= m <= N+1");
    std::vector<mpq_class> base(static_cast<std::size_t>(N + 2));
    for (int k = 1; k <= N + 1; ++k) {
        base[static_cast<std::size_t>(k)] = binomial_q(mpq_class(1, 2), static_cast<unsigned long>(k + 1));
        if ((k + 1) % 2 != 0) base[static_cast<std::size_t>(k)] = -base[static_cast<std::size_t>(k)];
    }
    mpq_class total(0);
    std::vector<int> ls(static_cast<std::size_t>(N + 2), 0);
    const mpz_class jfact = factorial_z(static_cast<unsigned long>(j));
    auto rec = [&](auto&& self, int k, int jl, int ml) -> void {
        if (k > N + 1) {
            if (jl != 0 || ml != 0) return;
            mpz_class mult = jfact;
            mpq_class prod(1);
            for (int kk = 1; kk <= N + 1; ++kk) {
                int l = ls[static_cast<std::size_t>(kk)];
                if (!l) continue;
                mult /= factorial_z(static_cast<unsigned long>(l));
                for (int t = 0; t < l; ++t) prod *= base[static_cast<std::size_t>(kk)];
            }
            total += mpq_class(mult) * prod;
            return;
        }
        for (int l = 0; l <= jl && k * l <= ml; ++l) {
            ls[static_cast<std::size_t>(k)] = l;
            self(self, k + 1, jl - l, ml - k * l);
        }
        ls[static_cast<std::size_t>(k)] = 0;
    };
    rec(rec, 1, j, m);
    total.canonicalize();
    return total;
}

inline IntervalReal multinomial_C(int j, int m, int N, mpfr_prec_t prec = default_precision)
{
    return IntervalReal::from_mpq(multinomial_C_exact(j, m, N), prec);
}

// ---------------------------------------------------------------------------
// The unshifted chain.

namespace detail {

// sum_j 2^j C_{j,mm} Gamma(j + t + 1/2) / j! as a rational multiple of sqrt(pi).
inline mpq_class gamma_weighted_sum(int mm, long t, int N)
{
    mpq_class acc(0);
    for (int j = 0; j <= mm; ++j) {
        mpq_class c = multinomial_C_exact(j, mm, N);
        if (c == 0) continue;
        mpq_class term = c * gamma_half_integer_rational(static_cast<unsigned long>(j + t)) /
                         mpq_class(factorial_z(static_cast<unsigned long>(j)));
        term *= mpq_class(mpz_class(1) << j);
        acc += term;
    }
    return acc;
}

struct BaseChain {
    std::vector<IntervalReal> a;      // phi coefficients a_l, l = 0..N+1
    std::vector<IntervalReal> c;      // c(m)
    std::vector<IntervalReal> cstar;  // c*(m)
    std::vector<IntervalReal> e1, o1; // index m
    std::vector<IntervalReal> bstar;  // b*(m)
    std::vector<IntervalReal> A;      // A(m)
};

inline BaseChain base_chain(int N, mpfr_prec_t prec)
{
    const int top = N + 1;
    BaseChain ch;
    const IntervalReal& pi = pi_interval(prec);
    const IntervalReal& spi = sqrt_pi_interval(prec);
    IntervalReal sqrt3 = sqrt_interval(3, prec);

    for (int l = 0; l <= top; ++l) ch.a.push_back(phi_coeff(static_cast<unsigned long>(l), prec));

    // c(m), m >= 1:
    //   G(m, m) - sum_k a_{k-1}/2 G(m-k, m-1) + sum_k sum_l (-1)^(l+k) a_l binom(1/2,k-l) G(m-k, m)
    // where G(mm, t) is gamma_weighted_sum(mm, t) sqrt(pi).
    ch.c.push_back(spi);
    for (int m = 1; m <= top; ++m) {
        IntervalReal v = q(gamma_weighted_sum(m, m, N), prec);
        for (int k = 1; k <= m; ++k) {
            mpq_class g = gamma_weighted_sum(m - k, m - 1, N) / 2;
            v -= ch.a[static_cast<std::size_t>(k - 1)] * q(g, prec);
        }
        for (int k = 1; k <= m; ++k) {
            mpq_class g = gamma_weighted_sum(m - k, m, N);
            for (int l = 0; l <= k; ++l) {
                mpq_class coef = g * binomial_q(mpq_class(1, 2), static_cast<unsigned long>(k - l));
                if ((l + k) % 2) coef = -coef;
                v += ch.a[static_cast<std::size_t>(l)] * q(coef, prec);
            }
        }
        ch.c.push_back(v * spi);
    }

    // c*(M)
    IntervalReal r3p = sqrt3 / pi;
    ch.cstar.push_back(ch.c[0]);
    for (int M = 1; M <= top; ++M) {
        IntervalReal v(0, prec);
        const int m = M / 2;
        if (M % 2 == 0) {
            for (int l = 1; l <= m; ++l) {
                mpq_class coef = binomial_q(mpq_class(-l), static_cast<unsigned long>(m - l));
                mpz_class p24;
                mpz_ui_pow_ui(p24.get_mpz_t(), 24, static_cast<unsigned long>(m - l));
                coef /= mpq_class(p24);
                v += ch.c[static_cast<std::size_t>(2 * l)] * pow(r3p, static_cast<unsigned long>(2 * l)) * q(coef, prec);
            }
        } else {
            for (int l = 0; l <= m; ++l) {
                mpq_class coef = binomial_q(mpq_class(-(2 * l + 1), 2), static_cast<unsigned long>(m - l));
                mpz_class p24;
                mpz_ui_pow_ui(p24.get_mpz_t(), 24, static_cast<unsigned long>(m - l));
                coef /= mpq_class(p24);
                v += ch.c[static_cast<std::size_t>(2 * l + 1)] * pow(r3p, static_cast<unsigned long>(2 * l + 1)) *
                     q(coef, prec);
            }
        }
        ch.cstar.push_back(v);
    }

    // e1, o1, e2 and b*
    IntervalReal x = -sqr(pi) / 18; // -pi^2/18
    const int half = top / 2 + 1;
    for (int m = 0; m <= half; ++m) {
        if (m == 0) {
            ch.e1.push_back(IntervalReal(1, prec));
        } else {
            IntervalReal s(0, prec);
            for (int nu = 1; nu <= m; ++nu) {
                mpz_class den = factorial_z(2 * nu - 1) * factorial_z(nu + m) * factorial_z(m - nu);
                s += pow(x, static_cast<unsigned long>(nu)) / IntervalReal::from_mpz(den, prec);
            }
            mpz_class p96;
            mpz_ui_pow_ui(p96.get_mpz_t(), 96, static_cast<unsigned long>(m));
            mpq_class lead(factorial_z(2 * m - 1), p96);
            if (m % 2) lead = -lead;
            ch.e1.push_back(q(lead, prec) * s);
        }
        IntervalReal s(0, prec);
        for (int nu = 0; nu <= m; ++nu) {
            mpz_class den = factorial_z(2 * nu) * factorial_z(m - nu) * factorial_z(nu + m + 1);
            s += pow(x, static_cast<unsigned long>(nu)) / IntervalReal::from_mpz(den, prec);
        }
        mpz_class p96;
        mpz_ui_pow_ui(p96.get_mpz_t(), 96, static_cast<unsigned long>(m));
        mpq_class lead(factorial_z(2 * m), 24 * p96);
        if (m % 2) lead = -lead;
        ch.o1.push_back(pi * q(lead, prec) / sqrt3 * s);
    }
    auto e2 = [&](int m) {
        mpz_class p24;
        mpz_ui_pow_ui(p24.get_mpz_t(), 24, static_cast<unsigned long>(m));
        return q(binomial_q(mpq_class(-5, 4), static_cast<unsigned long>(m)) / mpq_class(p24), prec);
    };
    for (int M = 0; M <= top; ++M) {
        const int m = M / 2;
        const auto& f = (M % 2 == 0) ? ch.e1 : ch.o1;
        IntervalReal v(0, prec);
        for (int k = 0; k <= m; ++k) v += f[static_cast<std::size_t>(k)] * e2(m - k);
        ch.bstar.push_back(v);
    }
    for (int M = 0; M <= top; ++M) {
        IntervalReal v(0, prec);
        for (int k = 0; k <= M; ++k)
            v += ch.bstar[static_cast<std::size_t>(k)] * ch.cstar[static_cast<std::size_t>(M - k)];
        ch.A.push_back(v);
    }
    return ch;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Error constants.

inline mpz_class cutoff_nN(int N, mpfr_prec_t prec = default_precision)
{
    using namespace detail;
    IntervalReal v = IntervalReal(3 * (3 * N + 4), prec) * log(IntervalReal(6 * N + 8, prec)) /
                     dec("1.69", prec);
    return ceil_upper(pow(v, 4ul));
}

inline ErrorLedger error_constants(int N, mpfr_prec_t prec = default_precision)
{
    using namespace detail;
    if (N < 3) throw std::invalid_argument("error_constants: N >= 3 required");
    ErrorLedger L;
    L.N = N;
    IntervalReal z = zeta_three_halves(prec) - IntervalReal(1, prec);
    for (int m = 0; m <= N + 3; ++m) {
        IntervalReal acc(0, prec);
        if (m == 0) {
            for (int j = 0; j <= N; ++j) acc += pow(z, static_cast<unsigned long>(j));
        } else {
            for (int j = 0; j <= N; ++j)
                acc += IntervalReal::from_mpz(binomial_z(static_cast<unsigned long>(j + m), static_cast<unsigned long>(j)), prec) *
                       pow(z, static_cast<unsigned long>(j));
            acc *= fact(static_cast<unsigned long>(m), prec) / sqrt(IntervalReal(m, prec));
        }
        L.S.push_back(acc);
    }
    auto p = [&](const char* base, int e) { return pow(dec(base, prec), static_cast<unsigned long>(e)); };
    const auto& S = L.S;
    L.E0 = dec("326.6", prec) + 4 * p("1.4", N) + dec("19.4", prec) * p("1.2", N) * fact(static_cast<unsigned long>(N + 3), prec) +
           dec("1.5", prec) * S[0] + dec("13.3", prec) * p("1.4", N) * S[1] +
           p("0.7", N) * (dec("5.2", prec) * S[static_cast<std::size_t>(N + 2)] + dec("44.5", prec) * S[static_cast<std::size_t>(N + 3)]);

    mpq_class e1max(0);
    for (int m = 0; m <= N + 1; ++m) L.R.push_back((N + 1 - m) / 2);
    for (int m = 1; m <= N + 1; ++m) {
        long Rm = L.R[static_cast<std::size_t>(m)];
        mpq_class b = abs(binomial_q(mpq_class(-m, 2), static_cast<unsigned long>(Rm + 1)));
        mpz_class p24;
        mpz_ui_pow_ui(p24.get_mpz_t(), 24, static_cast<unsigned long>(Rm + 1));
        b /= mpq_class(p24);
        if (b > e1max) e1max = b;
    }
    L.E1 = q(e1max, prec);
    IntervalReal f2 = fact(static_cast<unsigned long>(2 * N + 2), prec);
    L.E2 = dec("6.1", prec) * f2 * L.E1;
    L.E3 = dec("1.3", prec) * f2 + dec("1.2", prec) * (L.E0 + L.E2 + dec("1.8", prec));
    L.C = L.E3 + dec("69.7", prec);
    return L;
}

// ---------------------------------------------------------------------------
// Coefficient sets, cached per (N, s, prec).

namespace detail {

struct CoeffCache {
    std::mutex mu;
    std::map<std::pair<int, mpfr_prec_t>, std::shared_ptr<const BaseChain>> chains;
    std::map<std::pair<int, mpfr_prec_t>, std::shared_ptr<const ErrorLedger>> ledgers;
    std::map<std::tuple<int, long, mpfr_prec_t>, std::shared_ptr<const CoefficientSet>> sets;
};

inline CoeffCache& coeff_cache()
{
    static CoeffCache c;
    return c;
}

inline std::shared_ptr<const BaseChain> cached_chain(int N, mpfr_prec_t prec)
{
    auto& c = coeff_cache();
    {
        std::lock_guard lock(c.mu);
        auto it = c.chains.find({N, prec});
        if (it != c.chains.end()) return it->second;
    }
    auto v = std::make_shared<const BaseChain>(base_chain(N, prec));
    std::lock_guard lock(c.mu);
    return c.chains.try_emplace({N, prec}, v).first->second;
}

inline std::shared_ptr<const ErrorLedger> cached_ledger(int N, mpfr_prec_t prec)
{
    auto& c = coeff_cache();
    {
        std::lock_guard lock(c.mu);
        auto it = c.ledgers.find({N, prec});
        if (it != c.ledgers.end()) return it->second;
    }
    auto v = std::make_shared<const ErrorLedger>(error_constants(N, prec));
    std::lock_guard lock(c.mu);
    return c.ledgers.try_emplace({N, prec}, v).first->second;
}

} // namespace detail

inline const detail::BaseChain& base_chain_cached(int N, mpfr_prec_t prec)
{
    return *detail::cached_chain(N, prec);
}

inline CoefficientSet base_coefficients(int N, mpfr_prec_t prec = 256)
{
    if (N < 3) throw std::invalid_argument("base_coefficients: N >= 3 required");
    auto chain = detail::cached_chain(N, prec);
    auto ledger = detail::cached_ledger(N, prec);
    CoefficientSet set;
    set.N = N;
    set.s = 0;
    set.prec = prec;
    set.A = chain->A;
    set.C = ledger->C;
    set.cutoff = cutoff_nN(N, prec);
    set.nu = set.cutoff;
    return set;
}

// Expansion coefficients d^[2]_s(m) of the shifted prefactor.
inline std::vector<IntervalReal> shifted_prefactor(int N, long s, mpfr_prec_t prec)
{
    using namespace detail;
    const int top = N + 1;
    const IntervalReal& pi = pi_interval(prec);
    IntervalReal sqrt3 = sqrt_interval(3, prec);
    IntervalReal x = -4 * sqr(pi) * IntervalReal(s, prec) / 3;
    const int half = top / 2 + 1;
    std::vector<IntervalReal> e1, o1, e2;
    mpz_class sz(s);
    for (int m = 0; m <= half; ++m) {
        mpz_class sm;
        mpz_pow_ui(sm.get_mpz_t(), sz.get_mpz_t(), static_cast<unsigned long>(m));
        mpz_class p4;
        mpz_ui_pow_ui(p4.get_mpz_t(), 4, static_cast<unsigned long>(m));
        if (m == 0) {
            e1.push_back(IntervalReal(1, prec));
        } else {
            IntervalReal acc(0, prec);
            for (int nu = 1; nu <= m; ++nu) {
                mpz_class den = factorial_z(2 * nu - 1) * factorial_z(nu + m) * factorial_z(m - nu);
                acc += pow(x, static_cast<unsigned long>(nu)) / IntervalReal::from_mpz(den, prec);
            }
            mpq_class lead(sm * factorial_z(2 * m - 1), p4);
            if (m % 2) lead = -lead;
            e1.push_back(q(lead, prec) * acc);
        }
        IntervalReal acc(0, prec);
        for (int nu = 0; nu <= m; ++nu) {
            mpz_class den = factorial_z(2 * nu) * factorial_z(m - nu) * factorial_z(nu + m + 1);
            acc += pow(x, static_cast<unsigned long>(nu)) / IntervalReal::from_mpz(den, prec);
        }
        mpq_class lead(sm * sz * factorial_z(2 * m), p4);
        if (m % 2) lead = -lead;
        o1.push_back(pi * q(lead, prec) / sqrt3 * acc);
        mpq_class b2 = binomial_q(mpq_class(-5, 4), static_cast<unsigned long>(m)) * mpq_class(sm);
        e2.push_back(q(b2, prec));
    }
    std::vector<IntervalReal> d;
    for (int M = 0; M <= top; ++M) {
        const int m = M / 2;
        const auto& f = (M % 2 == 0) ? e1 : o1;
        IntervalReal v(0, prec);
        for (int k = 0; k <= m; ++k) v += f[static_cast<std::size_t>(k)] * e2[static_cast<std::size_t>(m - k)];
        d.push_back(v);
    }
    return d;
}

inline ShiftConstants shift_constants(int N, long s, const IntervalReal& CN, mpfr_prec_t prec)
{
    using namespace detail;
    ShiftConstants K;
    const IntervalReal& pi = pi_interval(prec);
    IntervalReal S(s, prec);
    IntervalReal ch = cosh(2 * pi * sqrt(S / 3));
    K.C1 = dec("1.5", prec) * half_pow(S, N + 3) * ch;
    K.C2 = IntervalReal(20, prec) * S / 11 * half_pow(5 * S / 4, N);
    K.C3 = dec("2.7", prec) * K.C1 + (IntervalReal(1, prec) + dec("1.2", prec) * sqrt(S)) * K.C2 +
           ((dec("20.5", prec) + 12 * S) * K.C2 + dec("0.7", prec)) * ch;
    mpq_class c4(0);
    for (int m = 1; m <= N + 1; ++m) {
        long Rm = (N + 1 - m) / 2;
        mpz_class sp;
        mpz_ui_pow_ui(sp.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(Rm + 1));
        mpq_class b = abs(binomial_q(mpq_class(-m, 2), static_cast<unsigned long>(Rm + 1))) * mpq_class(sp);
        if (b > c4) c4 = b;
    }
    K.C4 = q(c4, prec);
    K.C5 = CN + dec("3.3", prec) * fact(static_cast<unsigned long>(2 * N + 2), prec) * K.C4;
    K.n1 = s >= 2 ? mpz_class(2) * mpz_class(s) * s * s * s : mpz_class(4);
    mpz_class q4;
    mpz_class num = mpz_class(s) * (N + 5);
    mpz_cdiv_q_ui(q4.get_mpz_t(), num.get_mpz_t(), 4);
    K.n2 = K.n1 > q4 ? K.n1 : q4;
    return K;
}

inline CoefficientSet shifted_coefficients(int N, long s, mpfr_prec_t prec = 256)
{
    using namespace detail;
    if (s == 0) return base_coefficients(N, prec);
    if (N < 3 || s < 1) throw std::invalid_argument("shifted_coefficients: N >= 3, s >= 1 required");
    auto& cache = coeff_cache();
    {
        std::lock_guard lock(cache.mu);
        auto it = cache.sets.find({N, s, prec});
        if (it != cache.sets.end()) return *it->second;
    }
    const int top = N + 1;
    auto chain = cached_chain(N, prec);
    auto ledger = cached_ledger(N, prec);
    const auto& A = chain->A;
    const mpz_class sz(s);

    // A*_s(m)
    std::vector<IntervalReal> Astar{A[0]};
    for (int M = 1; M <= top; ++M) {
        const int m = M / 2;
        IntervalReal v(0, prec);
        if (M % 2 == 0) {
            for (int l = 1; l <= m; ++l) {
                mpz_class sp;
                mpz_pow_ui(sp.get_mpz_t(), sz.get_mpz_t(), static_cast<unsigned long>(m - l));
                mpq_class coef = binomial_q(mpq_class(-l), static_cast<unsigned long>(m - l)) * mpq_class(sp);
                v += A[static_cast<std::size_t>(2 * l)] * q(coef, prec);
            }
        } else {
            for (int l = 0; l <= m; ++l) {
                mpz_class sp;
                mpz_pow_ui(sp.get_mpz_t(), sz.get_mpz_t(), static_cast<unsigned long>(m - l));
                mpq_class coef = binomial_q(mpq_class(-(2 * l + 1), 2), static_cast<unsigned long>(m - l)) * mpq_class(sp);
                v += A[static_cast<std::size_t>(2 * l + 1)] * q(coef, prec);
            }
        }
        Astar.push_back(v);
    }
    std::vector<IntervalReal> d = shifted_prefactor(N, s, prec);

    CoefficientSet set;
    set.N = N;
    set.s = s;
    set.prec = prec;
    for (int M = 0; M <= top; ++M) {
        IntervalReal v(0, prec);
        for (int k = 0; k <= M; ++k) v += d[static_cast<std::size_t>(k)] * Astar[static_cast<std::size_t>(M - k)];
        set.A.push_back(v);
    }

    ShiftConstants K = shift_constants(N, s, ledger->C, prec);
    const IntervalReal& pi = pi_interval(prec);
    IntervalReal S(s, prec);
    IntervalReal ch = cosh(2 * pi * sqrt(S / 3));
    IntervalReal f2 = fact(static_cast<unsigned long>(2 * N + 2), prec);
    set.C = K.C3 * K.C5 / pow(2 * S, static_cast<unsigned long>(N + 2)) + dec("7.4", prec) * f2 * K.C3 +
            4 * S * ch * K.C5 + dec("461.7", prec) * f2 * half_pow(S, 3) * ch * half_pow(5 * (S + IntervalReal(1, prec)) / 4, N);

    mpz_class nN = cutoff_nN(N, prec);
    set.cutoff = (nN - s) > K.n2 ? mpz_class(nN - s) : K.n2;
    set.nu = nN > K.n2 ? nN : K.n2;
    set.shift = K;

    auto shared = std::make_shared<const CoefficientSet>(set);
    std::lock_guard lock(cache.mu);
    cache.sets.try_emplace({N, s, prec}, shared);
    return set;
}

// ---------------------------------------------------------------------------
// Envelopes.

// e^(2 pi sqrt(n/3)) / (8 3^(3/4) sqrt(pi) n^(5/4))
inline IntervalReal envelope_prefactor(const IntervalReal& n)
{
    auto prec = n.precision();
    IntervalReal three(3, prec);
    IntervalReal num = exp(2 * pi_interval(prec) * sqrt(n / 3));
    IntervalReal den = 8 * sqrt(sqrt(three * three * three)) * sqrt_pi_interval(prec) * n * sqrt(sqrt(n));
    return num / den;
}

// sum_m A(m) n^(-m/2) +/- C n^(-(N+2)/2) with explicit coefficient list.
inline std::pair<IntervalReal, IntervalReal> envelope_poly(const std::vector<IntervalReal>& A,
                                                           const IntervalReal& C, int N,
                                                           const IntervalReal& n)
{
    IntervalReal x = IntervalReal(1, n.precision()) / sqrt(n);
    IntervalReal acc(0, n.precision());
    IntervalReal xp(1, n.precision());
    for (const auto& a : A) {
        acc += a * xp;
        xp *= x;
    }
    IntervalReal err = C * pow(x, static_cast<unsigned long>(N + 2));
    return {acc - err, acc + err};
}

struct EnvelopeBounds {
    IntervalReal lower; // certified: lower.lo <= u(n+s)
    IntervalReal upper; // certified: u(n+s) <= upper.hi
};

inline EnvelopeBounds envelope_eval(const CoefficientSet& set, const mpz_class& n)
{
    if (n < set.nu) throw std::domain_error("envelope_eval: n below nu_N(s), bound unproven");
    IntervalReal nn = IntervalReal::from_mpz(n, set.prec);
    auto [pm, pp] = envelope_poly(set.A, set.C, set.N, nn);
    IntervalReal F = envelope_prefactor(nn);
    return {F * pm, F * pp};
}

// ---------------------------------------------------------------------------
// N = 12 Turan threshold machinery with the rounded error constants.

struct TuranThresholdReport {
    bool master = false;             // the full inequality, certified
    bool lower_bound_holds = false;  // 4(...)(...) > 4 Q1 > 0
    bool upper_bound_holds = false;  // 0 < (...)^2 < Q2
    bool q_relation = false;         // 4 Q1 > Q2
    IntervalReal master_margin;      // LHS - RHS
    IntervalReal q_margin;           // 4 Q1 - Q2
    mpfr_prec_t prec = 0;
};

inline const char* rounded_error_constant(long s)
{
    static const char* table[4] = {"1.4e27", "8.8e32", "1.4e35", "4.8e36"};
    if (s < 0 || s > 3) throw std::out_of_range("rounded constant only for 0 <= s <= 3");
    return table[s];
}

inline IntervalReal turan_Q1(const IntervalReal& n)
{
    auto prec = n.precision();
    const IntervalReal& pi = pi_interval(prec);
    IntervalReal r3 = sqrt_interval(3, prec);
    IntervalReal x = IntervalReal(1, prec) / sqrt(n); // n^-1/2
    auto P = [&](unsigned long k) { return pow(pi, k); };
    IntervalReal c6 = P(4) / 12;
    IntervalReal c7 = 5 * P(5) / (9 * r3) - 35 * P(3) / (16 * r3);
    IntervalReal c8 = 1085 * P(2) / 128 - 215 * P(4) / 36 + 1609 * P(6) / 2592;
    IntervalReal c9 = 175 * P(3) / (2 * r3) - 19215 * r3 * pi / 1024 - 83111 * P(5) / (3456 * r3) +
                      65161 * P(7) / (46656 * r3);
    IntervalReal c10(-2060, prec);
    return pow(x, 6ul) * (c6 + x * (c7 + x * (c8 + x * (c9 + x * c10))));
}

inline IntervalReal turan_Q2(const IntervalReal& n)
{
    auto prec = n.precision();
    const IntervalReal& pi = pi_interval(prec);
    IntervalReal r3 = sqrt_interval(3, prec);
    IntervalReal x = IntervalReal(1, prec) / sqrt(n);
    auto P = [&](unsigned long k) { return pow(pi, k); };
    IntervalReal c6 = P(4) / 3;
    IntervalReal c7 = 20 * P(5) / (9 * r3) - 35 * P(3) / (4 * r3);
    IntervalReal c8 = 1085 * P(2) / 32 - 215 * P(4) / 9 + 1609 * P(6) / 648;
    IntervalReal c9 = 350 * P(3) / r3 - 19215 * r3 * pi / 256 - 83255 * P(5) / (864 * r3) +
                      65161 * P(7) / (11664 * r3);
    return pow(x, 6ul) * (c6 + x * (c7 + x * (c8 + x * c9)));
}

inline TuranThresholdReport turan_threshold_check(const mpz_class& n, mpfr_prec_t prec = 256)
{
    if (n < 1) throw std::domain_error("turan_threshold_check: n >= 1 required");
    TuranThresholdReport rep;
    rep.prec = prec;
    IntervalReal nn = IntervalReal::from_mpz(n, prec);
    std::vector<IntervalReal> Pm, Pp;
    for (long s = 0; s <= 3; ++s) {
        CoefficientSet set = shifted_coefficients(12, s, prec);
        IntervalReal C = IntervalReal::from_decimal(rounded_error_constant(s), prec);
        auto [lo, hi] = envelope_poly(set.A, C, 12, nn);
        Pm.push_back(lo);
        Pp.push_back(hi);
    }
    IntervalReal f1 = sqr(Pm[1]) - Pp[0] * Pp[2];
    IntervalReal f2 = sqr(Pm[2]) - Pp[1] * Pp[3];
    IntervalReal lhs = 4 * f1 * f2;
    IntervalReal inner = Pp[1] * Pp[2] - Pm[0] * Pm[3];
    IntervalReal rhs = sqr(inner);
    rep.master_margin = lhs - rhs;
    rep.master = f1.certainly_positive() && f2.certainly_positive() && rep.master_margin.certainly_nonnegative();

    IntervalReal Q1 = turan_Q1(nn);
    IntervalReal Q2 = turan_Q2(nn);
    rep.lower_bound_holds = certainly_less(4 * Q1, lhs) && Q1.certainly_positive();
    rep.upper_bound_holds = inner.certainly_positive() ? certainly_less(rhs, Q2) : (certainly_less(rhs, Q2) && !rhs.contains_zero());
    rep.q_margin = 4 * Q1 - Q2;
    rep.q_relation = rep.q_margin.certainly_positive();
    return rep;
}

// Same as turan_threshold_check, escalating precision until all four
// sub-checks are decided or the ladder is exhausted.
inline TuranThresholdReport turan_threshold_check_escalating(const mpz_class& n,
                                                             const std::vector<mpfr_prec_t>& ladder = {256, 512, 1024})
{
    TuranThresholdReport rep;
    for (auto p : ladder) {
        rep = turan_threshold_check(n, p);
        if (rep.master && rep.lower_bound_holds && rep.q_relation) break;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Shifted convexity: Delta^2_j(u)(n+2j) = u(n+2j) - 2u(n+j) + u(n) for N = 3.

struct ConvexityConstants {
    long j = 0;
    std::vector<IntervalReal> A1;  // A_{2j}(m) - 2A_j(m) + A(m), m = 0..4
    IntervalReal error;            // C_3(2j) + 2 C_3(j) + C_3
    mpz_class cutoff;              // n_Delta(j)
    mpz_class min_n;               // max(n_3, 32 j^4): envelopes valid from here
};

inline ConvexityConstants convexity_constants(long j, mpfr_prec_t prec = 256)
{
    if (j < 1) throw std::invalid_argument("convexity: j >= 1 required");
    ConvexityConstants K;
    K.j = j;
    CoefficientSet s0 = base_coefficients(3, prec);
    CoefficientSet sj = shifted_coefficients(3, j, prec);
    CoefficientSet s2j = shifted_coefficients(3, 2 * j, prec);
    for (int m = 0; m <= 4; ++m) {
        std::size_t i = static_cast<std::size_t>(m);
        K.A1.push_back(s2j.A[i] - 2 * sj.A[i] + s0.A[i]);
    }
    K.error = s2j.C + 2 * sj.C + s0.C;
    mpz_class j4 = mpz_class(j) * j * j * j;
    mpz_class n3 = cutoff_nN(3, prec);
    K.min_n = n3 > 32 * j4 ? n3 : mpz_class(32 * j4);
    IntervalReal J(j, prec);
    IntervalReal inner = 58 * sqr(J) + K.error;
    IntervalReal t = 9 * sqr(inner) / (pow(pi_interval(prec), 5ul) * pow(J, 4ul));
    mpz_class third = ceil_upper(t);
    mpz_class mx = K.min_n > third ? K.min_n : third;
    K.cutoff = 2 * j + mx;
    return K;
}

struct ConvexityResult {
    bool positive = false;   // certified Delta^2_j(u)(n+2j) > 0
    mpz_class cutoff;        // n_Delta(j)
    IntervalReal lower;      // certified lower bound on Delta^2_j(u)(n+2j)
};

inline ConvexityResult convexity_bound(long j, const mpz_class& n, mpfr_prec_t prec = 256)
{
    ConvexityConstants K = convexity_constants(j, prec);
    if (n < K.min_n) throw std::domain_error("convexity_bound: n below max(n_3, 32 j^4)");
    IntervalReal nn = IntervalReal::from_mpz(n, prec);
    IntervalReal x = IntervalReal(1, prec) / sqrt(nn);
    IntervalReal poly(0, prec);
    // m = 0, 1 vanish exactly; their tiny enclosures are kept for rigor
    for (int m = 0; m <= 4; ++m) poly += K.A1[static_cast<std::size_t>(m)] * pow(x, static_cast<unsigned long>(m));
    poly -= K.error * pow(x, 5ul);
    ConvexityResult r;
    r.cutoff = K.cutoff;
    r.lower = envelope_prefactor(nn) * poly;
    r.positive = r.lower.certainly_positive();
    return r;
}

} // namespace unimodal
