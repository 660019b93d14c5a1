#include "unimodal/exact_counts.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace unimodal;

namespace {

// Truncated product prod_{j<=n} (1 - q^j), dense.
std::vector<long> euler_product(long n)
{
    std::vector<long> c(static_cast<std::size_t>(n + 1), 0);
    c[0] = 1;
    for (long j = 1; j <= n; ++j)
        for (long i = n; i >= j; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - j)];
    return c;
}

// Partition numbers by the standard coin-change recurrence.
std::vector<mpz_class> partitions(long n)
{
    std::vector<mpz_class> p(static_cast<std::size_t>(n + 1), 0);
    p[0] = 1;
    for (long part = 1; part <= n; ++part)
        for (long i = part; i <= n; ++i) p[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i - part)];
    return p;
}

} // namespace

TEST(Pentagonal, SmallCases)
{
    EXPECT_EQ(pentagonal_coeffs(0), (std::map<long, int>{{0, 1}}));
    EXPECT_EQ(pentagonal_coeffs(1), (std::map<long, int>{{0, 1}, {1, -1}}));
    EXPECT_EQ(pentagonal_coeffs(7), (std::map<long, int>{{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}}));
}

TEST(Pentagonal, AgreesWithProductExpansion)
{
    const long n = 300;
    auto dense = euler_product(n);
    auto sparse = pentagonal_coeffs(n);
    for (long i = 0; i <= n; ++i) {
        auto it = sparse.find(i);
        EXPECT_EQ(dense[static_cast<std::size_t>(i)], it == sparse.end() ? 0 : it->second) << i;
    }
}

TEST(EtaSquare, SmallCases)
{
    EXPECT_EQ(eta_sq_coeffs(0).values, std::vector<mpz_class>{1});
    EXPECT_EQ(eta_sq_coeffs(2).values, (std::vector<mpz_class>{1, -2, -1}));
    EXPECT_EQ(eta_sq_coeffs(3).values[3], 2);
}

TEST(EtaSquare, AgreesWithSquaredProduct)
{
    const long n = 200;
    auto e = euler_product(n);
    auto t = eta_sq_coeffs(n);
    for (long i = 0; i <= n; ++i) {
        long acc = 0;
        for (long j = 0; j <= i; ++j) acc += e[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(i - j)];
        EXPECT_EQ(t.values[static_cast<std::size_t>(i)], acc) << i;
    }
}

TEST(P2, SmallValues)
{
    auto t = p2_table(10);
    EXPECT_EQ(t.values[0], 1);
    EXPECT_EQ(t.values[1], 2);
    EXPECT_EQ(t.values[3], 10);
}

TEST(P2, EqualsSelfConvolutionOfPartitions)
{
    const long n = 400;
    auto p = partitions(n);
    auto t = p2_table(n);
    for (long i = 0; i <= n; ++i) {
        mpz_class acc = 0;
        for (long j = 0; j <= i; ++j) acc += p[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(i - j)];
        ASSERT_EQ(t.values[static_cast<std::size_t>(i)], acc) << i;
    }
}

TEST(P2, PrefixStable)
{
    auto a = p2_table(150);
    auto b = p2_table(300);
    for (long i = 0; i <= 150; ++i) EXPECT_EQ(a.values[static_cast<std::size_t>(i)], b.values[static_cast<std::size_t>(i)]);
}

TEST(U, SmallValues)
{
    auto u = u_table(5);
    EXPECT_EQ(u.values[0], 1);
    EXPECT_EQ(u.values[1], 1);
    EXPECT_EQ(u.values[2], 3);
    EXPECT_EQ(u.values[3], 6);
    auto o = u_series_oracle(0);
    EXPECT_EQ(o.values, std::vector<mpz_class>{1});
    EXPECT_EQ(u_series_oracle(3).values[1], 1);
}

TEST(U, TableAgreesWithSeriesOracle)
{
    auto a = u_table(500);
    auto b = u_series_oracle(500);
    ASSERT_EQ(a.values.size(), b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) ASSERT_EQ(a.values[i], b.values[i]) << i;
}

TEST(U, MonotoneAndNonnegative)
{
    auto p = p2_table(1000);
    auto u = u_from_p2(p, 1000);
    for (long n = 1; n <= 1000; ++n) {
        EXPECT_GE(p.values[static_cast<std::size_t>(n)], p.values[static_cast<std::size_t>(n - 1)]);
        if (n >= 2) {
            EXPECT_GE(u.values[static_cast<std::size_t>(n)], u.values[static_cast<std::size_t>(n - 1)]);
        }
    }
}

TEST(U, AlternatingPartialSumsBracket)
{
    const long nmax = 600;
    auto p = p2_table(nmax);
    auto u = u_from_p2(p, nmax);
    for (long n = 50; n <= nmax; n += 37) {
        mpz_class partial = 0;
        for (long m = 0; m * (m + 1) / 2 <= n; ++m) {
            const mpz_class& v = p.values[static_cast<std::size_t>(n - m * (m + 1) / 2)];
            partial += (m % 2 == 0) ? v : mpz_class(-v);
            if (m % 2 == 0)
                EXPECT_GE(partial, u.values[static_cast<std::size_t>(n)]);
            else
                EXPECT_LE(partial, u.values[static_cast<std::size_t>(n)]);
        }
    }
}

TEST(CountTable, NegativeIndexIsZero)
{
    auto u = u_table(3);
    EXPECT_EQ(u.at(-1), 0);
    EXPECT_THROW(u.at(4), std::out_of_range);
}

TEST(Cache, BinaryRoundTripAndExtension)
{
    auto dir = std::filesystem::temp_directory_path() / "unimodal_cache_test";
    std::filesystem::remove_all(dir);
    auto t = p2_table(50);
    save_table(t, dir.string() + ".bin");
    auto back = load_table(dir.string() + ".bin");
    EXPECT_EQ(back.values, t.values);
    EXPECT_EQ(back.kind, CountKind::P2);

    auto a = cached_table(CountKind::P2, 100, dir);
    auto b = cached_table(CountKind::U, 200, dir);
    auto c = cached_table(CountKind::P2, 150, dir);
    EXPECT_EQ(a.values, p2_table(100).values);
    EXPECT_EQ(b.values, u_table(200).values);
    EXPECT_EQ(c.values, p2_table(150).values);
    EXPECT_EQ(load_table(dir / "p2.bin").n_max(), 200);
    std::filesystem::remove_all(dir);
    std::filesystem::remove(dir.string() + ".bin");
}

TEST(Cache, SignedValuesRoundTrip)
{
    auto path = std::filesystem::temp_directory_path() / "unimodal_eta.bin";
    auto t = eta_sq_coeffs(80);
    save_table(t, path);
    EXPECT_EQ(load_table(path).values, t.values);
    std::filesystem::remove(path);
}
