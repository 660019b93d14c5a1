#pragma once

// Dedekind sums, the eta multiplier, and the two Kloosterman-type sums used by
// the exact formulas for p2(n) and u(n).

#include "unimodal/interval.hpp"
#include "unimodal/special_functions.hpp"

#include <gmpxx.h>

#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace unimodal {

inline long mod_floor(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

// h' with h h' = 1 (mod k); 0 when k = 1.
inline long mod_inverse(long h, long k)
{
    if (k == 1) return 0;
    long old_r = mod_floor(h, k), r = k, old_s = 1, s = 0;
    while (r != 0) {
        long q = old_r / r;
        long t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw std::invalid_argument("mod_inverse: not coprime");
    return mod_floor(old_s, k);
}

// s(h,k) through the reciprocity law, O(log k) steps.
inline ExactRational dedekind_sum(long h, long k)
{
    if (k < 1) throw std::invalid_argument("dedekind_sum: k must be positive");
    if (std::gcd(h, k) != 1) throw std::invalid_argument("dedekind_sum: gcd(h,k) != 1");
    h = mod_floor(h, k);
    ExactRational acc(0);
    int sign = 1;
    // s(h,k) = (h^2 + k^2 + 1)/(12hk) - 1/4 - s(k mod h, h)
    while (h != 0) {
        mpz_class hh(h), kk(k);
        ExactRational term(hh * hh + kk * kk + 1, 12 * hh * kk);
        term.canonicalize();
        term -= ExactRational(1, 4);
        if (sign > 0)
            acc += term;
        else
            acc -= term;
        long nh = k % h;
        k = h;
        h = nh;
        sign = -sign;
    }
    acc.canonicalize();
    return acc;
}

// Direct O(k) evaluation of the defining sum.
inline ExactRational dedekind_sum_direct(long h, long k)
{
    if (k < 1) throw std::invalid_argument("dedekind_sum: k must be positive");
    if (std::gcd(h, k) != 1) throw std::invalid_argument("dedekind_sum: gcd(h,k) != 1");
    // sum_j (j/k - 1/2)(frac(hj/k) - 1/2) scaled by 4k^2 stays integral
    mpz_class acc = 0;
    for (long j = 1; j < k; ++j) {
        long r = mod_floor(h * j, k);
        acc += mpz_class(2 * j - k) * mpz_class(2 * r - k);
    }
    ExactRational out(acc, mpz_class(4) * k * k);
    out.canonicalize();
    return out;
}

// 6k s(h,k) as an integer (for all coprime h, k it is integral).
inline long dedekind_sum_6k(long h, long k)
{
    ExactRational s = dedekind_sum(h, k) * 6 * k;
    s.canonicalize();
    if (s.get_den() != 1) throw std::logic_error("6k s(h,k) not integral");
    return s.get_num().get_si();
}

// Phase theta (in turns) of the eta multiplier for a matrix with c > 0, in
// the convention eta(M tau) = nu(M) (c tau + d)^(1/2) eta(tau) with the
// principal square root:
// theta = (a + d)/(24c) + s(-d, c)/2 - 1/8.
inline ExactRational eta_multiplier_phase_matrix(long a, long b, long c, long d)
{
    if (c <= 0) throw std::invalid_argument("eta multiplier: c must be positive");
    if (a * d - b * c != 1) throw std::invalid_argument("eta multiplier: determinant != 1");
    ExactRational theta(mpz_class(a + d), mpz_class(24 * c));
    theta.canonicalize();
    theta += dedekind_sum(-d, c) / 2;
    theta -= ExactRational(1, 8);
    theta.canonicalize();
    return theta;
}

// M_{h,k} = [[h', -(h h' + 1)/k], [k, -h]] with h h' = -1 (mod k), h' the
// least nonnegative solution.
struct EtaMatrix {
    long a, b, c, d;
};

inline EtaMatrix eta_matrix(long h, long k)
{
    if (std::gcd(h, k) != 1) throw std::invalid_argument("eta matrix: gcd(h,k) != 1");
    long hp = k == 1 ? 0 : mod_floor(-mod_inverse(h, k), k);
    long b = -(h * hp + 1) / k;
    return {hp, b, k, -h};
}

inline ExactRational eta_multiplier_phase(long h, long k)
{
    EtaMatrix m = eta_matrix(h, k);
    return eta_multiplier_phase_matrix(m.a, m.b, m.c, m.d);
}

// A_k(n, m) = sum_h exp(2 pi i (-s(h,k) + (n h + m h')/k)), h h' = 1 (mod k).
// The Dedekind sum enters with a minus sign relative to n h; with the same
// sign the truncated formula misses p2(n) by far more than its tail bound.
inline ComplexEnclosure kloosterman_p2(long k, long n, long m, mpfr_prec_t prec)
{
    if (k < 1) throw std::invalid_argument("kloosterman_p2: k must be positive");
    ComplexEnclosure acc{IntervalReal(0, prec), IntervalReal(0, prec)};
    for (long h = 0; h < k; ++h) {
        if (std::gcd(h, k) != 1) continue;
        long hp = mod_inverse(h, k);
        ExactRational phase = -dedekind_sum(h, k);
        phase += ExactRational(mpz_class(mod_floor(n, k)) * h + mpz_class(mod_floor(m, k)) * hp,
                               mpz_class(k));
        acc += ComplexEnclosure::unit(phase, prec);
    }
    return acc;
}

// K_k(n, r) = e^(3 pi i/4) (-1)^r sum_h nu(M_{h,k})^-1 zeta_24k^(-(24n+1)h + (12r^2+12r+1)h').
// The magnitude bound |K_k| <= k is asserted; a violation is a convention bug.
inline ComplexEnclosure kloosterman_u(long k, long n, long r, mpfr_prec_t prec)
{
    if (k < 1) throw std::invalid_argument("kloosterman_u: k must be positive");
    ComplexEnclosure acc{IntervalReal(0, prec), IntervalReal(0, prec)};
    const mpz_class rr(r);
    const mpz_class lin = 12 * rr * rr + 12 * rr + 1;
    for (long h = 0; h < k; ++h) {
        if (std::gcd(h, k) != 1) continue;
        EtaMatrix mat = eta_matrix(h, k);
        ExactRational phase(3, 8);
        phase += ExactRational(mod_floor(r, 2), 2);
        phase -= eta_multiplier_phase_matrix(mat.a, mat.b, mat.c, mat.d);
        ExactRational z(-(24 * mpz_class(n) + 1) * h + lin * mat.a, 24 * mpz_class(k));
        z.canonicalize();
        phase += z;
        acc += ComplexEnclosure::unit(frac(phase), prec);
    }
    IntervalReal mag2 = acc.abs_sq();
    IntervalReal bound(k * k, prec);
    if (certainly_less(bound, mag2)) throw std::logic_error("kloosterman_u: |K_k| > k");
    return acc;
}

// Simplified phase of a single K_k term in turns:
// (1 + r)/2 - s(h,k)/2 - n h/k + r(r+1) h'/(2k) with h h' = -1 (mod k).
inline ExactRational kloosterman_u_term_phase(long h, long k, long n, long r)
{
    long hp = k == 1 ? 0 : mod_floor(-mod_inverse(h, k), k);
    ExactRational p(1 + mod_floor(r, 2), 2);
    p -= dedekind_sum(h, k) / 2;
    p -= ExactRational(mpz_class(n) * h, mpz_class(k));
    p += ExactRational(mpz_class(r) * (r + 1) * hp, 2 * mpz_class(k));
    return frac(p);
}

// ---------------------------------------------------------------------------
// Shared cache for A_k(n, 0), which depends on n only through n mod k.
// Entries are built once and then read-only.

class KloostermanP2Cache {
public:
    explicit KloostermanP2Cache(mpfr_prec_t prec) : prec_(prec) {}

    mpfr_prec_t precision() const { return prec_; }

    // Real enclosure of A_k(n, 0); the imaginary part vanishes by h <-> k-h pairing.
    const IntervalReal& get(long k, long n)
    {
        const long res = mod_floor(n, k);
        {
            std::shared_lock lock(mu_);
            auto it = values_.find(k);
            if (it != values_.end() && it->second[static_cast<std::size_t>(res)])
                return *it->second[static_cast<std::size_t>(res)];
        }
        auto value = std::make_unique<IntervalReal>(compute(k, res));
        std::unique_lock lock(mu_);
        auto& row = values_[k];
        if (row.empty()) row.resize(static_cast<std::size_t>(k));
        auto& slot = row[static_cast<std::size_t>(res)];
        if (!slot) slot = std::move(value);
        return *slot;
    }

private:
    IntervalReal compute(long k, long res)
    {
        const std::vector<long>& s6 = dedekind_row(k);
        const std::vector<IntervalReal>& cosines = cos_row(k);
        IntervalReal acc(0, prec_);
        const long period = 6 * k;
        for (long h = 0; h < k; ++h) {
            if (s6[static_cast<std::size_t>(h)] == LONG_MIN) continue;
            long j = mod_floor(-s6[static_cast<std::size_t>(h)] + 6 * mod_floor(res * h, k), period);
            acc += cosines[static_cast<std::size_t>(j)];
        }
        return acc;
    }

    const std::vector<long>& dedekind_row(long k)
    {
        {
            std::shared_lock lock(mu_);
            auto it = dedekind_.find(k);
            if (it != dedekind_.end()) return it->second;
        }
        std::vector<long> row(static_cast<std::size_t>(k), LONG_MIN);
        for (long h = 0; h < k; ++h)
            if (std::gcd(h, k) == 1) row[static_cast<std::size_t>(h)] = dedekind_sum_6k(h, k);
        std::unique_lock lock(mu_);
        return dedekind_.try_emplace(k, std::move(row)).first->second;
    }

    // cos(2 pi j/(6k)) for 0 <= j < 6k.
    const std::vector<IntervalReal>& cos_row(long k)
    {
        {
            std::shared_lock lock(mu_);
            auto it = cosines_.find(k);
            if (it != cosines_.end()) return it->second;
        }
        std::vector<IntervalReal> row;
        row.reserve(static_cast<std::size_t>(6 * k));
        for (long j = 0; j < 6 * k; ++j) row.push_back(cos_2pi(mpq_class(j, 6 * k), prec_));
        std::unique_lock lock(mu_);
        return cosines_.try_emplace(k, std::move(row)).first->second;
    }

    mpfr_prec_t prec_;
    std::shared_mutex mu_;
    std::map<long, std::vector<long>> dedekind_;
    std::map<long, std::vector<IntervalReal>> cosines_;
    std::map<long, std::vector<std::unique_ptr<IntervalReal>>> values_;
};

} // namespace unimodal
