#pragma once

// Exact big-integer tables for p2(n) (2-colored partitions), u(n) (unimodal
// sequences) and the coefficients of (q;q)_inf^2.

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace unimodal {

enum class CountKind : std::uint8_t { P2 = 1, U = 2, ETA_SQ = 3 };

inline std::string to_string(CountKind k)
{
    switch (k) {
    case CountKind::P2: return "p2";
    case CountKind::U: return "u";
    case CountKind::ETA_SQ: return "eta_sq";
    }
    return "?";
}

struct CountTable {
    CountKind kind = CountKind::P2;
    std::vector<mpz_class> values;

    long n_max() const { return static_cast<long>(values.size()) - 1; }

    // Zero extension to negative indices.
    mpz_class at(long n) const
    {
        if (n < 0) return 0;
        if (n > n_max()) throw std::out_of_range("count table index beyond n_max");
        return values[static_cast<std::size_t>(n)];
    }
};

// Sparse expansion of (q;q)_inf: exponent -> sign, exponents k(3k-1)/2 <= n_max.
inline std::map<long, int> pentagonal_coeffs(long n_max)
{
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    std::map<long, int> out;
    out[0] = 1;
    for (long k = 1;; ++k) {
        const long g1 = k * (3 * k - 1) / 2;
        const long g2 = k * (3 * k + 1) / 2;
        if (g1 > n_max) break;
        const int sign = (k % 2 == 0) ? 1 : -1;
        out[g1] = sign;
        if (g2 <= n_max) out[g2] = sign;
    }
    return out;
}

// Coefficients of (q;q)_inf^2 up to q^n_max.
inline CountTable eta_sq_coeffs(long n_max)
{
    auto pent = pentagonal_coeffs(n_max);
    std::vector<long> c(static_cast<std::size_t>(n_max + 1), 0);
    for (auto [a, sa] : pent)
        for (auto [b, sb] : pent) {
            if (a + b > n_max) break;
            c[static_cast<std::size_t>(a + b)] += sa * sb;
        }
    CountTable t;
    t.kind = CountKind::ETA_SQ;
    t.values.reserve(c.size());
    for (long v : c) t.values.emplace_back(v);
    return t;
}

namespace detail {

// Extends a p2 prefix to n_max with sum_j eta_sq[j] p2(n-j) = [n = 0].
inline void extend_p2(std::vector<mpz_class>& p2, long n_max)
{
    if (static_cast<long>(p2.size()) > n_max) return;
    CountTable eta = eta_sq_coeffs(n_max);
    std::vector<std::pair<long, long>> nz;
    for (long j = 1; j <= n_max; ++j) {
        const mpz_class& v = eta.values[static_cast<std::size_t>(j)];
        if (v != 0) nz.emplace_back(j, v.get_si());
    }
    if (p2.empty()) p2.emplace_back(1);
    p2.reserve(static_cast<std::size_t>(n_max + 1));
    mpz_class acc;
    for (long n = static_cast<long>(p2.size()); n <= n_max; ++n) {
        acc = 0;
        for (auto [j, c] : nz) {
            if (j > n) break;
            const mpz_class& prev = p2[static_cast<std::size_t>(n - j)];
            if (c > 0)
                mpz_submul_ui(acc.get_mpz_t(), prev.get_mpz_t(), static_cast<unsigned long>(c));
            else
                mpz_addmul_ui(acc.get_mpz_t(), prev.get_mpz_t(), static_cast<unsigned long>(-c));
        }
        p2.push_back(acc);
    }
}

inline long triangular(long m) { return m * (m + 1) / 2; }

} // namespace detail

inline CountTable p2_table(long n_max)
{
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    CountTable t;
    t.kind = CountKind::P2;
    detail::extend_p2(t.values, n_max);
    return t;
}

// u(n) = sum_m (-1)^m p2(n - T_m), p2 of negative argument is 0.
inline CountTable u_from_p2(const CountTable& p2, long n_max)
{
    if (p2.kind != CountKind::P2 || p2.n_max() < n_max)
        throw std::invalid_argument("p2 table too short");
    CountTable t;
    t.kind = CountKind::U;
    t.values.reserve(static_cast<std::size_t>(n_max + 1));
    for (long n = 0; n <= n_max; ++n) {
        mpz_class acc = 0;
        for (long m = 0; detail::triangular(m) <= n; ++m) {
            const mpz_class& v = p2.values[static_cast<std::size_t>(n - detail::triangular(m))];
            if (m % 2 == 0)
                acc += v;
            else
                acc -= v;
        }
        t.values.push_back(acc);
    }
    return t;
}

inline CountTable u_table(long n_max)
{
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    return u_from_p2(p2_table(n_max), n_max);
}

// Independent expansion of sum_k q^k / (q;q)_k^2 truncated at q^n_max.
inline CountTable u_series_oracle(long n_max)
{
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    const auto len = static_cast<std::size_t>(n_max + 1);
    std::vector<mpz_class> total(len, 0);
    std::vector<mpz_class> term(len, 0); // q^k/(q;q)_k^2
    term[0] = 1;
    total[0] = 1;
    for (long k = 1; k <= n_max; ++k) {
        // multiply by q
        for (long i = n_max; i >= 1; --i) term[static_cast<std::size_t>(i)] = term[static_cast<std::size_t>(i - 1)];
        term[0] = 0;
        // divide by (1 - q^k) twice
        for (int rep = 0; rep < 2; ++rep)
            for (long i = k; i <= n_max; ++i)
                term[static_cast<std::size_t>(i)] += term[static_cast<std::size_t>(i - k)];
        for (std::size_t i = 0; i < len; ++i) total[i] += term[i];
    }
    CountTable t;
    t.kind = CountKind::U;
    t.values = std::move(total);
    return t;
}

// ---------------------------------------------------------------------------
// Binary cache: magic "UMCT", kind byte, u64 count, then per entry a sign
// byte, u32 byte length and big-endian magnitude bytes.

inline void save_table(const CountTable& t, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write("UMCT", 4);
    const auto kind = static_cast<std::uint8_t>(t.kind);
    out.write(reinterpret_cast<const char*>(&kind), 1);
    const std::uint64_t count = t.values.size();
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    std::vector<unsigned char> buf;
    for (const auto& v : t.values) {
        const std::uint8_t sign = v < 0 ? 1 : 0;
        std::size_t nbytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
        if (v == 0) nbytes = 0;
        buf.assign(nbytes, 0);
        std::size_t written = 0;
        if (nbytes) mpz_export(buf.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
        const auto len = static_cast<std::uint32_t>(written);
        out.write(reinterpret_cast<const char*>(&sign), 1);
        out.write(reinterpret_cast<const char*>(&len), sizeof len);
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(len));
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline CountTable load_table(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "UMCT") throw std::runtime_error("bad table magic");
    std::uint8_t kind = 0;
    std::uint64_t count = 0;
    in.read(reinterpret_cast<char*>(&kind), 1);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || kind < 1 || kind > 3) throw std::runtime_error("bad table header");
    CountTable t;
    t.kind = static_cast<CountKind>(kind);
    t.values.reserve(count);
    std::vector<unsigned char> buf;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint8_t sign = 0;
        std::uint32_t len = 0;
        in.read(reinterpret_cast<char*>(&sign), 1);
        in.read(reinterpret_cast<char*>(&len), sizeof len);
        if (!in) throw std::runtime_error("truncated table");
        buf.resize(len);
        in.read(reinterpret_cast<char*>(buf.data()), len);
        if (!in) throw std::runtime_error("truncated table");
        mpz_class v = 0;
        if (len) mpz_import(v.get_mpz_t(), len, 1, 1, 1, 0, buf.data());
        if (sign) v = -v;
        t.values.push_back(v);
    }
    return t;
}

// Loads a cached p2 or u table from dir, extends it to n_max if needed and
// writes it back. Entries already on disk are never recomputed.
inline CountTable cached_table(CountKind kind, long n_max, const std::filesystem::path& dir)
{
    if (kind == CountKind::ETA_SQ) return eta_sq_coeffs(n_max);
    std::filesystem::create_directories(dir);
    const auto p2_path = dir / "p2.bin";
    CountTable p2;
    p2.kind = CountKind::P2;
    if (std::filesystem::exists(p2_path)) {
        try {
            p2 = load_table(p2_path);
        } catch (const std::exception&) {
            p2.values.clear();
        }
    }
    const long before = p2.n_max();
    detail::extend_p2(p2.values, n_max);
    if (p2.n_max() > before) save_table(p2, p2_path);
    if (kind == CountKind::P2) {
        p2.values.resize(static_cast<std::size_t>(n_max + 1));
        return p2;
    }
    return u_from_p2(p2, n_max);
}

} // namespace unimodal
