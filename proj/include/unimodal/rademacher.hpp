#pragma once

// Certified enclosures of p2(n) and u(n) from the truncated exact formula for
// p2 with its explicit tail bound, the four-term Turan certificate, and a
// numerical probe of the exact formula for u(n).

#include "unimodal/exact_counts.hpp"
#include "unimodal/interval.hpp"
#include "unimodal/modular_sums.hpp"
#include "unimodal/special_functions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace unimodal {

inline constexpr long default_exact_threshold = 1000;

enum class EnclosureTarget { P2, U };

struct Provenance {
    enum class Kind { ExactTable, TruncationM, TruncationLM } kind = Kind::ExactTable;
    long M = 0;
    long L = 0;

    std::string describe() const
    {
        switch (kind) {
        case Kind::ExactTable: return "exact-table";
        case Kind::TruncationM: return "truncation(M=" + std::to_string(M) + ")";
        case Kind::TruncationLM: return "truncation(L=" + std::to_string(L) + ",M=" + std::to_string(M) + ")";
        }
        return "?";
    }
};

// lower.lo <= value <= upper.hi
struct Enclosure {
    IntervalReal lower;
    IntervalReal upper;
    EnclosureTarget target = EnclosureTarget::P2;
    Provenance provenance;

    bool contains(const mpz_class& v) const
    {
        return mpfr_cmp_z(lower.lo(), v.get_mpz_t()) <= 0 && mpfr_cmp_z(upper.hi(), v.get_mpz_t()) >= 0;
    }
};

// ---------------------------------------------------------------------------
// f_M(n): bound on the k > M tail of the exact formula for p2(n).

inline IntervalReal tail_f(long M, long n, mpfr_prec_t prec)
{
    if (M < 0 || n < 1) throw std::invalid_argument("tail_f: M >= 0 and n >= 1 required");
    const IntervalReal& pi = pi_interval(prec);
    IntervalReal base = pow(pi, 5ul) / 108;
    IntervalReal m12 = IntervalReal(12 * n - 1, prec);
    IntervalReal t = pi * sqrt(m12) / 3;
    IntervalReal Mi(M, prec);
    // Indicator M <= t - 1; when undecided the nonnegative term is kept.
    bool active = !certainly_less(t - IntervalReal(1, prec), Mi);
    if (!active) return base;
    IntervalReal M1(M + 1, prec);
    IntervalReal extra = 2 * sqrt(6 * M1) / (m12 * sqrt(sqrt(m12))) * (t - Mi) * exp(t / M1);
    // t - M >= 1 whenever the indicator holds; clamp at 0 for undecided inputs
    if (mpfr_sgn(extra.lo()) < 0) mpfr_set_zero(extra.lo(), 1);
    return base + extra;
}

// ---------------------------------------------------------------------------
// p2 enclosures.

class P2Evaluator {
public:
    // The exact table covers 0..exact_threshold; above it the truncated
    // formula is used.
    P2Evaluator(long M, mpfr_prec_t prec, long exact_threshold = default_exact_threshold,
                std::shared_ptr<const CountTable> exact = nullptr,
                std::shared_ptr<KloostermanP2Cache> sums = nullptr)
        : M_(M), prec_(prec), threshold_(exact_threshold), exact_(std::move(exact)), sums_(std::move(sums))
    {
        if (!exact_ || exact_->n_max() < threshold_)
            exact_ = std::make_shared<const CountTable>(p2_table(std::max<long>(threshold_, 0)));
        if (!sums_ || sums_->precision() != prec_) sums_ = std::make_shared<KloostermanP2Cache>(prec_);
    }

    long M() const { return M_; }
    mpfr_prec_t precision() const { return prec_; }
    long exact_threshold() const { return threshold_; }
    const std::shared_ptr<KloostermanP2Cache>& sums() const { return sums_; }
    const std::shared_ptr<const CountTable>& exact_table() const { return exact_; }

    // Formula-based enclosure regardless of the exact threshold (n >= 1).
    Enclosure formula(long n) const
    {
        if (n < 1) throw std::invalid_argument("p2 formula needs n >= 1");
        const mpfr_prec_t work = prec_ + 16;
        const IntervalReal& pi = pi_interval(work);
        IntervalReal m12(12 * n - 1, work);
        IntervalReal z = pi * sqrt(m12) / 3;
        IntervalReal sum(0, work);
        // The k-th term is about e^{z/k}; it only needs enough bits to reach
        // the absolute accuracy of the k = 1 term.
        const double zd = z.mid_double();
        for (long k = 1; k <= M_; ++k) {
            const IntervalReal& a = sums_->get(k, n);
            if (a.contains_zero() && a.width() == 0) continue;
            const double drop = (zd - zd / static_cast<double>(k)) * M_LOG2E;
            const auto term_prec = std::max<mpfr_prec_t>(64, work - static_cast<mpfr_prec_t>(drop));
            IntervalReal x = round_to(z, term_prec) / k;
            sum += a * bessel_I(4, x, term_prec) / k;
        }
        IntervalReal main = 2 * pi / m12 * sum;
        IntervalReal f = tail_f(M_, n, work);
        Enclosure e;
        e.target = EnclosureTarget::P2;
        e.provenance = {Provenance::Kind::TruncationM, M_, 0};
        e.lower = round_to(main - f, prec_);
        e.upper = round_to(main + f, prec_);
        return e;
    }

    Enclosure operator()(long n) const
    {
        if (n <= threshold_) {
            mpz_class v = n < 0 ? mpz_class(0) : exact_->values[static_cast<std::size_t>(n)];
            Enclosure e;
            e.lower = IntervalReal::from_mpz(v, prec_);
            e.upper = e.lower;
            e.provenance = {Provenance::Kind::ExactTable, 0, 0};
            return e;
        }
        return formula(n);
    }

private:
    long M_;
    mpfr_prec_t prec_;
    long threshold_;
    std::shared_ptr<const CountTable> exact_;
    std::shared_ptr<KloostermanP2Cache> sums_;
};

inline Enclosure p2_enclosure(long M, long n, mpfr_prec_t prec, long exact_threshold = default_exact_threshold)
{
    return P2Evaluator(M, prec, exact_threshold)(n);
}

// Memoizes p2 enclosures by argument; one instance per (M, prec) and chunk.
class P2Memo {
public:
    explicit P2Memo(std::shared_ptr<const P2Evaluator> eval) : eval_(std::move(eval)) {}

    const Enclosure& get(long n)
    {
        {
            std::shared_lock lock(mu_);
            auto it = memo_.find(n);
            if (it != memo_.end()) return it->second;
        }
        Enclosure e = (*eval_)(n);
        std::unique_lock lock(mu_);
        return memo_.try_emplace(n, std::move(e)).first->second;
    }

    const P2Evaluator& evaluator() const { return *eval_; }

private:
    std::shared_ptr<const P2Evaluator> eval_;
    std::shared_mutex mu_;
    std::unordered_map<long, Enclosure> memo_;
};

// ---------------------------------------------------------------------------
// u enclosures.

inline long triangular_number(long m) { return m * (m + 1) / 2; }

// u_-(L,M;n) = sum_{m<=2L+1} (-1)^m p2^{eps_{m+1}}(n - T_m) and
// u_+(L,M;n) = sum_{m<=2L} (-1)^m p2^{eps_m}(n - T_m), eps_m = + for even m.
template <class P2Source>
Enclosure u_enclosure_with(long L, long n, P2Source&& p2, long M, mpfr_prec_t prec)
{
    if (L < 0 || n < 1) throw std::invalid_argument("u_enclosure: L >= 0 and n >= 1 required");
    IntervalReal lo(0, prec), hi(0, prec);
    for (long m = 0; m <= 2 * L + 1; ++m) {
        const long arg = n - triangular_number(m);
        if (arg < 0) break;
        const Enclosure& e = p2(arg);
        const bool even = (m % 2 == 0);
        // lower: even m adds p2_-, odd m subtracts p2_+
        if (even)
            lo += e.lower;
        else
            lo -= e.upper;
        if (m <= 2 * L) {
            if (even)
                hi += e.upper;
            else
                hi -= e.lower;
        }
    }
    Enclosure out;
    out.target = EnclosureTarget::U;
    out.provenance = {Provenance::Kind::TruncationLM, M, L};
    out.lower = std::move(lo);
    out.upper = std::move(hi);
    return out;
}

inline Enclosure u_enclosure(long L, long M, long n, mpfr_prec_t prec, long exact_threshold = default_exact_threshold)
{
    P2Evaluator eval(M, prec, exact_threshold);
    return u_enclosure_with(L, n, [&](long a) { return eval(a); }, M, prec);
}

// ---------------------------------------------------------------------------
// Certificates. Each works from u enclosures at the needed shifts; a positive
// certified lower bound on every u_- is required for the monotonicity argument.

enum class CertificateStatus { Verified, Inconclusive };

struct CertificateResult {
    CertificateStatus status = CertificateStatus::Inconclusive;
    IntervalReal value; // enclosure of the certificate expression
    bool negative = false; // value certified < 0: more precision cannot help
};

namespace detail {

inline bool lowers_positive(std::initializer_list<const Enclosure*> es)
{
    for (auto* e : es)
        if (!e->lower.certainly_positive()) return false;
    return true;
}

} // namespace detail

// 3a^2 b^2 + 6 w a b c - 4 W B^3 - 4 A^3 C - W^2 C^2 with lower enclosures
// w,a,b,c of u(n-1..n+2) and upper enclosures W,A,B,C.
inline CertificateResult turan_certificate_from(const Enclosure& u_m1, const Enclosure& u_0, const Enclosure& u_p1,
                                                const Enclosure& u_p2)
{
    const IntervalReal& w = u_m1.lower;
    const IntervalReal& a = u_0.lower;
    const IntervalReal& b = u_p1.lower;
    const IntervalReal& c = u_p2.lower;
    const IntervalReal& W = u_m1.upper;
    const IntervalReal& A = u_0.upper;
    const IntervalReal& B = u_p1.upper;
    const IntervalReal& C = u_p2.upper;
    IntervalReal v = 3 * sqr(a) * sqr(b) + 6 * w * a * b * c - 4 * W * pow(B, 3ul) - 4 * pow(A, 3ul) * C -
                     sqr(W) * sqr(C);
    CertificateResult r;
    r.negative = v.certainly_negative();
    if (detail::lowers_positive({&u_m1, &u_0, &u_p1, &u_p2}) && v.certainly_nonnegative())
        r.status = CertificateStatus::Verified;
    r.value = std::move(v);
    return r;
}

// u_-(n)^2 >= u_+(n-1) u_+(n+1)
inline CertificateResult logconcavity_certificate_from(const Enclosure& u_m1, const Enclosure& u_0, const Enclosure& u_p1)
{
    IntervalReal v = sqr(u_0.lower) - u_m1.upper * u_p1.upper;
    CertificateResult r;
    r.negative = v.certainly_negative();
    if (detail::lowers_positive({&u_0}) && u_m1.upper.certainly_nonnegative() && v.certainly_nonnegative())
        r.status = CertificateStatus::Verified;
    r.value = std::move(v);
    return r;
}

// u_-(n) - 2 u_+(n-j) + u_-(n-2j) > 0
inline CertificateResult convexity_certificate_from(const Enclosure& u_0, const Enclosure& u_mj, const Enclosure& u_m2j)
{
    IntervalReal v = u_0.lower - 2 * u_mj.upper + u_m2j.lower;
    CertificateResult r;
    r.negative = v.certainly_negative() || (v.is_finite() && mpfr_sgn(v.hi()) <= 0);
    if (v.certainly_positive()) r.status = CertificateStatus::Verified;
    r.value = std::move(v);
    return r;
}

inline CertificateResult turan_certificate(long L, long M, long n, mpfr_prec_t prec,
                                           long exact_threshold = default_exact_threshold)
{
    if (n < 2) throw std::invalid_argument("turan_certificate: n >= 2 required");
    auto eval = std::make_shared<const P2Evaluator>(M, prec, exact_threshold);
    P2Memo memo(eval);
    auto src = [&](long a) -> const Enclosure& { return memo.get(a); };
    Enclosure e[4] = {u_enclosure_with(L, n - 1, src, M, prec), u_enclosure_with(L, n, src, M, prec),
                      u_enclosure_with(L, n + 1, src, M, prec), u_enclosure_with(L, n + 2, src, M, prec)};
    return turan_certificate_from(e[0], e[1], e[2], e[3]);
}

// ---------------------------------------------------------------------------
// Exact-formula probe (validation instrument, not a certified bound).

struct ProbeResult {
    double value = 0;          // k <= k_max part of the exact formula
    double remainder = 0;      // certified-style bound for k > k_max plus secondary terms
    double quad_error = 0;     // Kronrod error estimate (heuristic)
    std::string value_text;    // value to ~30 digits
    bool certified = false;    // always false: quadrature error is not rigorous
    IntervalReal enclosure;    // [value - remainder - quad_error, value + remainder + quad_error]
};

namespace detail {

template <class Real>
ProbeResult exact_formula_probe_impl(long n, long k_max, double quad_tol, mpfr_prec_t prec)
{
    using boost::math::quadrature::gauss_kronrod;
    const Real pi = boost::math::constants::pi<Real>();
    const Real N24 = Real(24 * n + 1);
    const Real sqrt6 = sqrt(Real(6));
    const Real pref = pi / (pow(Real(2), Real(0.75)) * sqrt(Real(3)) * pow(N24, Real(0.75)));
    Real total = 0;
    Real err_total = 0;
    for (long k = 1; k <= k_max; ++k) {
        const Real bess_scale = pi / (3 * sqrt(Real(2)) * k) * sqrt(N24);
        for (long r = 0; r < 2 * k; ++r) {
            ComplexEnclosure K = kloosterman_u(k, n, r, prec);
            Real re(K.re.mid_string(40));
            if (re == 0) continue;
            // x = sin(theta): (1-x^2)^(3/4) dx = cos(theta)^(5/2) dtheta
            auto f = [&](Real theta) -> Real {
                Real c = cos(theta);
                if (c <= 0) return Real(0);
                Real x = sin(theta);
                Real arg = pi / (2 * k) * (x / sqrt6 - r - Real(0.5));
                Real cot = 1 / tan(arg);
                return pow(c, Real(2.5)) * cot * boost::math::cyl_bessel_i(Real(1.5), bess_scale * c);
            };
            Real err = 0;
            Real val = gauss_kronrod<Real, 61>::integrate(f, -pi / 2, pi / 2, 15, Real(1e-40), &err);
            total += re * val / (k * k);
            err_total += abs(re) * err / (k * k);
        }
    }
    total *= pref;
    err_total *= pref;
    ProbeResult out;
    out.value = static_cast<double>(total);
    out.value_text = total.str(30, std::ios_base::scientific);
    out.quad_error = static_cast<double>(err_total) + quad_tol;

    // Tail k > k_max: 0.4 e^{pi sqrt(n/3)}; plus the two secondary-term bounds.
    const double dn = static_cast<double>(n);
    double rem = 0.4 * std::exp(M_PI * std::sqrt(dn / 3));
    rem += 28.0 / (24 * dn + 1);
    rem += 14.0 * std::exp(2 * M_PI * std::sqrt(dn / 3) - M_PI * std::pow(dn, 0.25) / std::sqrt(3.0)) / (24 * dn + 1);
    out.remainder = rem;

    IntervalReal v = IntervalReal::from_decimal(out.value_text, prec);
    IntervalReal slack = IntervalReal::from_double(rem, prec) + IntervalReal::from_double(out.quad_error, prec);
    out.enclosure = IntervalReal(prec);
    mpfr_sub(out.enclosure.lo(), v.lo(), slack.hi(), MPFR_RNDD);
    mpfr_add(out.enclosure.hi(), v.hi(), slack.hi(), MPFR_RNDU);
    return out;
}

} // namespace detail

inline ProbeResult exact_formula_probe(long n, long k_max, double quad_tol = 1e-6, mpfr_prec_t prec = 128)
{
    if (n < 2 || k_max < 1) throw std::invalid_argument("probe: n >= 2 and k_max >= 1 required");
    using boost::multiprecision::mpfr_float_50;
    using boost::multiprecision::mpfr_float_100;
    if (prec <= 160) return detail::exact_formula_probe_impl<mpfr_float_50>(n, k_max, quad_tol, prec);
    return detail::exact_formula_probe_impl<mpfr_float_100>(n, k_max, quad_tol, prec);
}

} // namespace unimodal
