#pragma once

// Directed-rounding interval arithmetic on MPFR endpoints.
//
// Every operation returns an interval that contains the exact real result
// for all points of the operands. Results carry the larger operand precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace unimodal {

inline constexpr mpfr_prec_t default_precision = 128;

namespace detail {

// The exponent range is per thread in MPFR. The default 2^30 bits overflows
// for e^(2 pi sqrt(n/3)) once n passes about 4e16.
inline void widen_exponent_range()
{
    thread_local bool done = false;
    if (done) return;
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    done = true;
}

} // namespace detail

class IntervalReal {
public:
    explicit IntervalReal(mpfr_prec_t prec = default_precision)
    {
        detail::widen_exponent_range();
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    IntervalReal(long value, mpfr_prec_t prec) : IntervalReal(prec)
    {
        mpfr_set_si(lo_, value, MPFR_RNDD);
        mpfr_set_si(hi_, value, MPFR_RNDU);
    }

    IntervalReal(const IntervalReal& other)
    {
        mpfr_init2(lo_, mpfr_get_prec(other.lo_));
        mpfr_init2(hi_, mpfr_get_prec(other.hi_));
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }

    IntervalReal(IntervalReal&& other) noexcept
    {
        mpfr_init2(lo_, mpfr_get_prec(other.lo_));
        mpfr_init2(hi_, mpfr_get_prec(other.hi_));
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
    }

    IntervalReal& operator=(const IntervalReal& other)
    {
        if (this != &other) {
            mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
            mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
            mpfr_set(lo_, other.lo_, MPFR_RNDD);
            mpfr_set(hi_, other.hi_, MPFR_RNDU);
        }
        return *this;
    }

    IntervalReal& operator=(IntervalReal&& other) noexcept
    {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        return *this;
    }

    ~IntervalReal()
    {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static IntervalReal from_mpz(const mpz_class& z, mpfr_prec_t prec)
    {
        IntervalReal r(prec);
        mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    static IntervalReal from_mpq(const mpq_class& q, mpfr_prec_t prec)
    {
        IntervalReal r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    // Exact decimal literal such as "1.4e27" or "-326.6".
    static IntervalReal from_decimal(std::string_view text, mpfr_prec_t prec)
    {
        IntervalReal r(prec);
        std::string s(text);
        if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 &&
            mpfr_nan_p(r.lo_))
            throw std::invalid_argument("bad decimal literal: " + s);
        mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
        return r;
    }

    // Enclosure of the double value x (exact, given enough precision).
    static IntervalReal from_double(double x, mpfr_prec_t prec)
    {
        IntervalReal r(prec);
        mpfr_set_d(r.lo_, x, MPFR_RNDD);
        mpfr_set_d(r.hi_, x, MPFR_RNDU);
        return r;
    }

    static IntervalReal hull(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec)
    {
        IntervalReal r(prec);
        mpfr_set(r.lo_, lo, MPFR_RNDD);
        mpfr_set(r.hi_, hi, MPFR_RNDU);
        return r;
    }

    static IntervalReal entire(mpfr_prec_t prec)
    {
        IntervalReal r(prec);
        mpfr_set_inf(r.lo_, -1);
        mpfr_set_inf(r.hi_, 1);
        return r;
    }

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    mpfr_ptr lo() { return lo_; }
    mpfr_ptr hi() { return hi_; }
    mpfr_prec_t precision() const { return std::max(mpfr_get_prec(lo_), mpfr_get_prec(hi_)); }

    double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_double() const
    {
        return 0.5 * mpfr_get_d(lo_, MPFR_RNDN) + 0.5 * mpfr_get_d(hi_, MPFR_RNDN);
    }

    bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
    bool certainly_positive() const { return is_finite() && mpfr_sgn(lo_) > 0; }
    bool certainly_negative() const { return is_finite() && mpfr_sgn(hi_) < 0; }
    bool certainly_nonnegative() const { return is_finite() && mpfr_sgn(lo_) >= 0; }
    bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }

    bool contains(const IntervalReal& inner) const
    {
        return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
    }

    bool contains(const mpq_class& q) const
    {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
    }

    bool contains(long v) const { return mpfr_cmp_si(lo_, v) <= 0 && mpfr_cmp_si(hi_, v) >= 0; }

    bool contains(const mpz_class& z) const
    {
        return mpfr_cmp_z(lo_, z.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, z.get_mpz_t()) >= 0;
    }

    // Upper bound on hi - lo as a double.
    double width() const
    {
        mpfr_t w;
        mpfr_init2(w, 64);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        double d = mpfr_get_d(w, MPFR_RNDU);
        mpfr_clear(w);
        return d;
    }

    // Upper bound on (hi - lo) / min|x| when 0 is not inside, else +inf.
    double relative_width() const
    {
        if (contains_zero()) return INFINITY;
        mpfr_t w, m;
        mpfr_init2(w, 64);
        mpfr_init2(m, 64);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        if (mpfr_sgn(lo_) > 0)
            mpfr_set(m, lo_, MPFR_RNDD);
        else
            mpfr_neg(m, hi_, MPFR_RNDD);
        mpfr_div(w, w, m, MPFR_RNDU);
        double d = mpfr_get_d(w, MPFR_RNDU);
        mpfr_clear(w);
        mpfr_clear(m);
        return d;
    }

    // log2 of the largest magnitude, useful for comparing against 2^-prec.
    long magnitude_exp() const
    {
        long a = mpfr_zero_p(lo_) ? LONG_MIN : mpfr_get_exp(lo_);
        long b = mpfr_zero_p(hi_) ? LONG_MIN : mpfr_get_exp(hi_);
        return std::max(a, b);
    }

    std::string to_string(int digits = 20) const
    {
        return "[" + endpoint_string(lo_, digits, MPFR_RNDD) + ", " +
               endpoint_string(hi_, digits, MPFR_RNDU) + "]";
    }

    // Midpoint in scientific notation with the given number of digits.
    std::string mid_string(int digits) const
    {
        mpfr_t m;
        mpfr_init2(m, precision() + 2);
        mpfr_add(m, lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(m, m, 1, MPFR_RNDN);
        std::string s = endpoint_string(m, digits, MPFR_RNDN);
        mpfr_clear(m);
        return s;
    }

    static std::string endpoint_string(mpfr_srcptr x, int digits, mpfr_rnd_t rnd)
    {
        if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
        if (mpfr_nan_p(x)) return "nan";
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(std::max(digits - 1, 0)) + "R*e";
        mpfr_asprintf(&buf, fmt.c_str(), rnd, x);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

namespace detail {

inline mpfr_prec_t join_prec(const IntervalReal& a, const IntervalReal& b)
{
    return std::max(a.precision(), b.precision());
}

// Four-corner product extremes; handles infinities by falling back to entire.
inline void mul_bounds(mpfr_ptr lo, mpfr_ptr hi, mpfr_srcptr al, mpfr_srcptr ah,
                       mpfr_srcptr bl, mpfr_srcptr bh, mpfr_prec_t prec)
{
    if (mpfr_sgn(al) >= 0 && mpfr_sgn(bl) >= 0) {
        mpfr_mul(lo, al, bl, MPFR_RNDD);
        mpfr_mul(hi, ah, bh, MPFR_RNDU);
    } else if (mpfr_sgn(ah) <= 0 && mpfr_sgn(bh) <= 0) {
        mpfr_mul(lo, ah, bh, MPFR_RNDD);
        mpfr_mul(hi, al, bl, MPFR_RNDU);
    } else if (mpfr_sgn(al) >= 0 && mpfr_sgn(bh) <= 0) {
        mpfr_mul(lo, ah, bl, MPFR_RNDD);
        mpfr_mul(hi, al, bh, MPFR_RNDU);
    } else if (mpfr_sgn(ah) <= 0 && mpfr_sgn(bl) >= 0) {
        mpfr_mul(lo, al, bh, MPFR_RNDD);
        mpfr_mul(hi, ah, bl, MPFR_RNDU);
    } else {
        mpfr_t t;
        mpfr_init2(t, prec);
        mpfr_srcptr as[2] = {al, ah};
        mpfr_srcptr bs[2] = {bl, bh};
        mpfr_set_inf(lo, 1);
        mpfr_set_inf(hi, -1);
        for (auto x : as)
            for (auto y : bs) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (mpfr_nan_p(t)) mpfr_set_inf(t, -1);
                mpfr_min(lo, lo, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (mpfr_nan_p(t)) mpfr_set_inf(t, 1);
                mpfr_max(hi, hi, t, MPFR_RNDU);
            }
        mpfr_clear(t);
    }
    if (mpfr_nan_p(lo)) mpfr_set_inf(lo, -1);
    if (mpfr_nan_p(hi)) mpfr_set_inf(hi, 1);
}

} // namespace detail

inline IntervalReal operator+(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(detail::join_prec(a, b));
    mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal operator-(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(detail::join_prec(a, b));
    mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
}

inline IntervalReal operator-(const IntervalReal& a)
{
    IntervalReal r(a.precision());
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    return r;
}

inline IntervalReal operator*(const IntervalReal& a, const IntervalReal& b)
{
    auto prec = detail::join_prec(a, b);
    IntervalReal r(prec);
    detail::mul_bounds(r.lo(), r.hi(), a.lo(), a.hi(), b.lo(), b.hi(), prec);
    return r;
}

inline IntervalReal operator/(const IntervalReal& a, const IntervalReal& b)
{
    auto prec = detail::join_prec(a, b);
    if (b.contains_zero()) return IntervalReal::entire(prec);
    IntervalReal inv(prec);
    mpfr_ui_div(inv.lo(), 1, b.hi(), MPFR_RNDD);
    mpfr_ui_div(inv.hi(), 1, b.lo(), MPFR_RNDU);
    return a * inv;
}

inline IntervalReal& operator+=(IntervalReal& a, const IntervalReal& b)
{
    if (b.precision() > a.precision()) {
        a = a + b;
        return a;
    }
    mpfr_add(a.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(a.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return a;
}

inline IntervalReal& operator-=(IntervalReal& a, const IntervalReal& b)
{
    a = a - b;
    return a;
}

inline IntervalReal& operator*=(IntervalReal& a, const IntervalReal& b)
{
    a = a * b;
    return a;
}

inline IntervalReal& operator/=(IntervalReal& a, const IntervalReal& b)
{
    a = a / b;
    return a;
}

inline IntervalReal operator*(const IntervalReal& a, long k)
{
    return a * IntervalReal(k, a.precision());
}

inline IntervalReal operator*(long k, const IntervalReal& a) { return a * k; }

inline IntervalReal operator/(const IntervalReal& a, long k)
{
    return a / IntervalReal(k, a.precision());
}

inline IntervalReal operator*(const IntervalReal& a, const mpq_class& q)
{
    return a * IntervalReal::from_mpq(q, a.precision());
}

inline IntervalReal operator*(const mpq_class& q, const IntervalReal& a) { return a * q; }

inline IntervalReal operator+(const IntervalReal& a, const mpq_class& q)
{
    return a + IntervalReal::from_mpq(q, a.precision());
}

inline IntervalReal operator-(const IntervalReal& a, const mpq_class& q)
{
    return a - IntervalReal::from_mpq(q, a.precision());
}

inline IntervalReal abs(const IntervalReal& a)
{
    if (a.certainly_nonnegative()) return a;
    if (mpfr_sgn(a.hi()) <= 0) return -a;
    IntervalReal r(a.precision());
    mpfr_set_zero(r.lo(), 1);
    mpfr_t t;
    mpfr_init2(t, a.precision());
    mpfr_neg(t, a.lo(), MPFR_RNDU);
    mpfr_max(r.hi(), t, a.hi(), MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

inline IntervalReal sqr(const IntervalReal& a)
{
    IntervalReal m = abs(a);
    IntervalReal r(a.precision());
    mpfr_sqr(r.lo(), m.lo(), MPFR_RNDD);
    mpfr_sqr(r.hi(), m.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal pow(const IntervalReal& a, unsigned long k)
{
    if (k == 0) return IntervalReal(1, a.precision());
    if (k % 2 == 0) return pow(sqr(a), k / 2);
    IntervalReal r = a;
    IntervalReal base = a;
    unsigned long e = k - 1;
    // e even: r * (a^2)^(e/2), and a^2 >= 0 keeps the product tight.
    return r * pow(sqr(base), e / 2);
}

inline IntervalReal sqrt(const IntervalReal& a)
{
    if (a.certainly_negative()) throw std::domain_error("sqrt of negative interval");
    IntervalReal r(a.precision());
    if (mpfr_sgn(a.lo()) <= 0)
        mpfr_set_zero(r.lo(), 1);
    else
        mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal exp(const IntervalReal& a)
{
    IntervalReal r(a.precision());
    mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal log(const IntervalReal& a)
{
    if (!a.certainly_positive()) throw std::domain_error("log of non-positive interval");
    IntervalReal r(a.precision());
    mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

// x^y for x > 0.
inline IntervalReal pow(const IntervalReal& x, const IntervalReal& y) { return exp(y * log(x)); }

inline IntervalReal pow(const IntervalReal& x, const mpq_class& y)
{
    if (y.get_den() == 1 && y >= 0) return pow(x, y.get_num().get_ui());
    return pow(x, IntervalReal::from_mpq(y, x.precision()));
}

inline IntervalReal sinh(const IntervalReal& a)
{
    IntervalReal r(a.precision());
    mpfr_sinh(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_sinh(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal cosh(const IntervalReal& a)
{
    IntervalReal m = abs(a);
    IntervalReal r(a.precision());
    mpfr_cosh(r.lo(), m.lo(), MPFR_RNDD);
    mpfr_cosh(r.hi(), m.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal max(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(detail::join_prec(a, b));
    mpfr_max(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal min(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(detail::join_prec(a, b));
    mpfr_min(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

// Smallest interval containing both.
inline IntervalReal hull(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(detail::join_prec(a, b));
    mpfr_min(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

inline bool certainly_less(const IntervalReal& a, const IntervalReal& b)
{
    return a.is_finite() && b.is_finite() && mpfr_less_p(a.hi(), b.lo());
}

inline bool certainly_less_equal(const IntervalReal& a, const IntervalReal& b)
{
    return a.is_finite() && b.is_finite() && mpfr_lessequal_p(a.hi(), b.lo());
}

inline bool overlaps(const IntervalReal& a, const IntervalReal& b)
{
    return mpfr_lessequal_p(a.lo(), b.hi()) && mpfr_lessequal_p(b.lo(), a.hi());
}

// Ceiling of the upper endpoint: the conservative integer for "n >= cutoff".
inline mpz_class ceil_upper(const IntervalReal& a)
{
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), a.hi(), MPFR_RNDU);
    return z;
}

inline mpz_class floor_lower(const IntervalReal& a)
{
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), a.lo(), MPFR_RNDD);
    return z;
}

// ---------------------------------------------------------------------------
// Constants, cached per precision.

namespace detail {

template <class Fn>
const IntervalReal& cached_constant(std::map<mpfr_prec_t, std::unique_ptr<IntervalReal>>& cache,
                                    std::mutex& mu, mpfr_prec_t prec, Fn&& make)
{
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(prec);
    if (it != cache.end()) return *it->second;
    auto value = std::make_unique<IntervalReal>(make(prec));
    auto& ref = *value;
    cache.emplace(prec, std::move(value));
    return ref;
}

} // namespace detail

inline const IntervalReal& pi_interval(mpfr_prec_t prec)
{
    static std::map<mpfr_prec_t, std::unique_ptr<IntervalReal>> cache;
    static std::mutex mu;
    return detail::cached_constant(cache, mu, prec, [](mpfr_prec_t p) {
        IntervalReal r(p);
        mpfr_const_pi(r.lo(), MPFR_RNDD);
        mpfr_const_pi(r.hi(), MPFR_RNDU);
        return r;
    });
}

inline const IntervalReal& sqrt_pi_interval(mpfr_prec_t prec)
{
    static std::map<mpfr_prec_t, std::unique_ptr<IntervalReal>> cache;
    static std::mutex mu;
    return detail::cached_constant(cache, mu, prec,
                                   [](mpfr_prec_t p) { return sqrt(pi_interval(p)); });
}

inline IntervalReal sqrt_interval(long v, mpfr_prec_t prec) { return sqrt(IntervalReal(v, prec)); }

// ---------------------------------------------------------------------------
// Trigonometry.

namespace detail {

// Enclosure of f over [lo, hi] where f has extrema exactly at (t + k) * pi for
// integers k, with value (+1 or -1) * sign pattern given by extreme_value(k).
template <class F, class Ext>
IntervalReal periodic_range(const IntervalReal& x, F&& f, mpq_class offset, Ext&& extreme_value)
{
    auto prec = x.precision();
    if (!x.is_finite()) {
        IntervalReal r(prec);
        mpfr_set_si(r.lo(), -1, MPFR_RNDD);
        mpfr_set_si(r.hi(), 1, MPFR_RNDU);
        return r;
    }
    IntervalReal r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    f(r.lo(), x.lo(), MPFR_RNDD);
    f(t, x.lo(), MPFR_RNDU);
    mpfr_set(r.hi(), t, MPFR_RNDU);
    f(t, x.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    f(t, x.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);

    // Critical points c_k = (offset + k) * pi inside x.
    IntervalReal scaled = x / pi_interval(prec) - IntervalReal::from_mpq(offset, prec);
    mpz_class kmin, kmax;
    mpfr_get_z(kmin.get_mpz_t(), scaled.lo(), MPFR_RNDU);
    mpfr_get_z(kmax.get_mpz_t(), scaled.hi(), MPFR_RNDD);
    if (kmax - kmin > 2) {
        mpfr_set_si(r.lo(), -1, MPFR_RNDD);
        mpfr_set_si(r.hi(), 1, MPFR_RNDU);
        return r;
    }
    for (mpz_class k = kmin; k <= kmax; ++k) {
        int v = extreme_value(k);
        if (v > 0)
            mpfr_set_si(r.hi(), 1, MPFR_RNDU);
        else
            mpfr_set_si(r.lo(), -1, MPFR_RNDD);
    }
    if (mpfr_cmp_si(r.lo(), -1) < 0) mpfr_set_si(r.lo(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi(), 1) > 0) mpfr_set_si(r.hi(), 1, MPFR_RNDU);
    return r;
}

} // namespace detail

inline IntervalReal cos(const IntervalReal& x)
{
    return detail::periodic_range(
        x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t d) { mpfr_cos(r, a, d); }, mpq_class(0),
        [](const mpz_class& k) { return mpz_even_p(k.get_mpz_t()) ? 1 : -1; });
}

inline IntervalReal sin(const IntervalReal& x)
{
    return detail::periodic_range(
        x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t d) { mpfr_sin(r, a, d); }, mpq_class(1, 2),
        [](const mpz_class& k) { return mpz_even_p(k.get_mpz_t()) ? 1 : -1; });
}

// Reduce a rational to [0, 1).
inline mpq_class frac(const mpq_class& q)
{
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    mpq_class r = q - mpq_class(fl);
    r.canonicalize();
    return r;
}

// cos(2 pi q) and sin(2 pi q) for an exact rational q. Quarter points are exact.
inline IntervalReal cos_2pi(const mpq_class& q, mpfr_prec_t prec)
{
    mpq_class f = frac(q);
    if (f == 0) return IntervalReal(1, prec);
    if (f == mpq_class(1, 2)) return IntervalReal(-1, prec);
    if (f == mpq_class(1, 4) || f == mpq_class(3, 4)) return IntervalReal(0, prec);
    // Guard bits absorb the argument's rounding error.
    auto work = prec + 16;
    IntervalReal arg = pi_interval(work) * IntervalReal::from_mpq(2 * f, work);
    IntervalReal c = cos(arg);
    IntervalReal r(prec);
    mpfr_set(r.lo(), c.lo(), MPFR_RNDD);
    mpfr_set(r.hi(), c.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal sin_2pi(const mpq_class& q, mpfr_prec_t prec)
{
    mpq_class f = frac(q);
    if (f == 0 || f == mpq_class(1, 2)) return IntervalReal(0, prec);
    if (f == mpq_class(1, 4)) return IntervalReal(1, prec);
    if (f == mpq_class(3, 4)) return IntervalReal(-1, prec);
    auto work = prec + 16;
    IntervalReal arg = pi_interval(work) * IntervalReal::from_mpq(2 * f, work);
    IntervalReal s = sin(arg);
    IntervalReal r(prec);
    mpfr_set(r.lo(), s.lo(), MPFR_RNDD);
    mpfr_set(r.hi(), s.hi(), MPFR_RNDU);
    return r;
}

// ---------------------------------------------------------------------------

struct ComplexEnclosure {
    IntervalReal re;
    IntervalReal im;

    explicit ComplexEnclosure(mpfr_prec_t prec = default_precision) : re(prec), im(prec) {}
    ComplexEnclosure(IntervalReal r, IntervalReal i) : re(std::move(r)), im(std::move(i)) {}

    static ComplexEnclosure unit(const mpq_class& phase, mpfr_prec_t prec)
    {
        return {cos_2pi(phase, prec), sin_2pi(phase, prec)};
    }

    ComplexEnclosure& operator+=(const ComplexEnclosure& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }

    IntervalReal abs_sq() const { return sqr(re) + sqr(im); }

    bool contains(const ComplexEnclosure& inner) const
    {
        return re.contains(inner.re) && im.contains(inner.im);
    }
};

inline ComplexEnclosure operator*(const ComplexEnclosure& a, const ComplexEnclosure& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

} // namespace unimodal
