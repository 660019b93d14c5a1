// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance 2 9 13     run a subset
// UNIMODAL_FULL=1 runs the campaign criteria (9, 13) over the full 1001..100000 range.

#include "unimodal/unimodal.hpp"

#include "closed_forms_fixture.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <unistd.h>

using namespace unimodal;

namespace {

constexpr mpfr_prec_t P = 256;

struct Outcome {
    bool pass;
    std::string detail;
};

bool full_run()
{
    const char* v = std::getenv("UNIMODAL_FULL");
    return v && std::string(v) == "1";
}

std::string join(const std::vector<long>& v, std::size_t limit = 12)
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) os << (i ? "," : "") << v[i];
    if (v.size() > limit) os << ",... (" << v.size() << " total)";
    os << "}";
    return os.str();
}

IntervalReal ipow(const IntervalReal& b, int e)
{
    IntervalReal r = pow(b, static_cast<unsigned long>(std::abs(e)));
    return e >= 0 ? r : IntervalReal(1, b.precision()) / r;
}

const CoefficientSet& coeffs(long s)
{
    static std::map<long, CoefficientSet> cache;
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, s == 0 ? base_coefficients(12, P) : shifted_coefficients(12, s, P)).first;
    return it->second;
}

Outcome c1()
{
    auto a = u_table(500);
    auto b = u_series_oracle(500);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] != b.values[i]) return {false, "first mismatch at n=" + std::to_string(i)};
    return {a.values.size() == 501 && b.values.size() == 501, "501 entries identical"};
}

Outcome c2()
{
    auto s = verify_turan_range(1, 3000);
    std::vector<long> want;
    for (long n = 1; n <= 26; ++n) want.push_back(n);
    for (long n : {28L, 30L, 32L}) want.push_back(n);
    return {s.failed == want && s.inconclusive.empty(), "failures " + join(s.failed, 40)};
}

Outcome c3()
{
    auto s = verify_logconcavity_range(1, 3000);
    return {s.failed == std::vector<long>{1, 5, 7} && s.inconclusive.empty(), "failures " + join(s.failed)};
}

Outcome c4()
{
    int agree = 0, total = 0;
    std::vector<std::string> bad;
    bool widths_ok = true;
    for (const auto& f : fixture::published_forms()) {
        ++total;
        const IntervalReal& got = coeffs(f.s).A[static_cast<std::size_t>(f.m)];
        IntervalReal want(0, P);
        for (auto& t : f.terms)
            want += IntervalReal::from_mpq(mpq_class(t.coef), P) * ipow(sqrt(IntervalReal(3, P)), t.r3) *
                    ipow(sqrt_pi_interval(P), t.pi2);
        widths_ok = widths_ok && got.relative_width() < 1e-30;
        if (overlaps(got, want))
            ++agree;
        else
            bad.push_back("A_" + std::to_string(f.s) + "(" + std::to_string(f.m) + ")");
    }
    std::string d = std::to_string(agree) + "/" + std::to_string(total) + " printed forms contained";
    if (!bad.empty()) {
        d += "; mismatches:";
        for (auto& b : bad) d += " " + b;
        d += " (printed forms disagree with independent Taylor-shift check)";
    }
    if (!widths_ok) d += "; width above 1e-30";
    return {bad.empty() && widths_ok, d};
}

Outcome c5()
{
    struct T {
        const char* c;
        int q4;
        int p;
    };
    const std::vector<std::vector<T>> forms = {
        {{"1/8", -3, 0}},
        {{"1/144", -3, 1}, {"-5/128", 3, -1}},
        {{"13/6912", -3, 2}, {"105/4096", 1, -2}, {"-35/768", -3, 0}},
        {{"7/23328", -1, 3}, {"105/8192", 3, -1}, {"315/65536", 3, -3}, {"-91/12288", -1, 1}},
        {{"7441/35831808", -3, 4}, {"5005/131072", -3, 0}, {"-1155/131072", 1, -2}, {"31185/4194304", 1, -4},
         {"-77/13824", -3, 2}},
    };
    IntervalReal q = sqrt(sqrt(IntervalReal(3, P)));
    IntervalReal norm = 8 * pow(q, 3ul) * sqrt_pi_interval(P);
    int ok = 0;
    std::string bad;
    for (std::size_t m = 0; m < forms.size(); ++m) {
        IntervalReal want(0, P);
        for (auto& t : forms[m]) want += IntervalReal::from_mpq(mpq_class(t.c), P) * ipow(q, t.q4) * ipow(pi_interval(P), t.p);
        if (overlaps(coeffs(0).A[m] / norm, want))
            ++ok;
        else
            bad += std::string(" ") + "ABCDE"[m];
    }
    std::string d = std::to_string(ok) + "/5 of A..E contained";
    if (!bad.empty()) d += "; mismatch:" + bad + " (printed pi/(144 3^{3/4}) term; the printed A(1) divides to pi/(144 3^{1/4}))";
    return {ok == 5, d};
}

Outcome c6()
{
    const char* printed[] = {"1.4e27", "8.8e32", "1.4e35", "4.8e36"};
    bool ok = true;
    std::ostringstream d;
    mpz_class nu_max = 0;
    for (long s = 0; s <= 3; ++s) {
        const auto& set = coeffs(s);
        bool b = certainly_less_equal(set.C, IntervalReal::from_decimal(printed[s], P));
        ok = ok && b;
        d << "C_12(" << s << ")~" << set.C.mid_string(3) << (b ? "<=" : ">") << printed[s] << "; ";
        if (set.nu > nu_max) nu_max = set.nu;
    }
    bool nu_ok = nu_max <= mpz_class("9399999999");
    d << "max nu_12(s)=" << nu_max.get_str();
    return {ok && nu_ok, d.str()};
}

Outcome c7()
{
    auto a = turan_threshold_check_escalating(mpz_class(78304));
    auto b = turan_threshold_check_escalating(mpz_class("8492967488"));
    auto c = turan_threshold_check_escalating(mpz_class("9400000000"));
    std::ostringstream d;
    d << "4Q1>Q2 at 78304: " << a.q_relation << "; lower bound at 8492967488: " << b.lower_bound_holds
      << "; master at 9.4e9: " << c.master;
    return {a.q_relation && b.lower_bound_holds && c.master, d.str()};
}

Outcome c8()
{
    auto u = u_table(3000);
    auto eval = std::make_shared<const P2Evaluator>(75, 128, 1000);
    P2Memo memo(eval);
    auto src = [&](long a) -> const Enclosure& { return memo.get(a); };
    std::vector<long> bad;
    for (long n = 1001; n <= 3000; ++n) {
        Enclosure e = u_enclosure_with(30, n, src, 75, 128);
        if (!e.contains(u.values[static_cast<std::size_t>(n)])) bad.push_back(n);
    }
    return {bad.empty(), "2000 values checked, outside: " + join(bad)};
}

VerifyOptions campaign_options()
{
    VerifyOptions o;
    o.exact_threshold = 1000; // everything above 1000 goes through the certificate route
    return o;
}

long campaign_end(long reduced) { return full_run() ? 100000 : reduced; }

Outcome c9()
{
    const long to = campaign_end(20000);
    auto s = verify_turan_range(1001, to, campaign_options());
    std::ostringstream d;
    d << "range 1001.." << to << ": failed " << s.failed.size() << ", inconclusive " << s.inconclusive.size();
    if (!s.inconclusive.empty()) d << " (first " << s.inconclusive.front() << ")";
    if (!full_run()) d << "; reduced range, UNIMODAL_FULL=1 for 100000";
    return {s.failed.empty() && s.inconclusive.empty() && to == 100000, d.str()};
}

Outcome c10()
{
    auto u = u_table(2000);
    std::ostringstream d;
    bool ok = true;
    for (long n : {100L, 500L, 2000L}) {
        ProbeResult p = exact_formula_probe(n, 1);
        IntervalReal exact = IntervalReal::from_mpz(u.values[static_cast<std::size_t>(n)], 128);
        IntervalReal diff = abs(IntervalReal::from_decimal(p.value_text, 128) - exact);
        IntervalReal bound = IntervalReal::from_double(p.remainder, 128) + IntervalReal::from_double(p.quad_error, 128);
        bool b = certainly_less_equal(diff, bound);
        ok = ok && b;
        d << "n=" << n << " |diff|/bound=" << (diff / bound).mid_string(3) << "; ";
    }
    return {ok, d.str()};
}

Outcome c11()
{
    const long M = 200, L = 35;
    std::vector<CoefficientSet> sets;
    mpz_class start = 0;
    for (long s = 0; s <= 3; ++s) {
        sets.push_back(s == 0 ? base_coefficients(3, P) : shifted_coefficients(3, s, P));
        if (sets.back().nu > start) start = sets.back().nu;
    }
    mpz_class n3 = cutoff_nN(3);
    if (start < n3) start = n3;
    const long lo = start.get_si(), hi = n3.get_si() + 100000;
    if (lo > hi) return {false, "envelope validity begins after the sampled window"};

    auto eval = std::make_shared<const P2Evaluator>(M, 128, 0);
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<long> pick(lo, hi);
    std::vector<long> samples = {lo, hi};
    for (int i = 0; i < 6; ++i) samples.push_back(pick(rng));
    int checked = 0;
    std::vector<long> bad;
    for (long n : samples) {
        P2Memo memo(eval);
        auto src = [&](long a) -> const Enclosure& { return memo.get(a); };
        for (long s = 0; s <= 3; ++s) {
            EnvelopeBounds env = envelope_eval(sets[static_cast<std::size_t>(s)], mpz_class(n));
            Enclosure r = u_enclosure_with(L, n + s, src, M, 128);
            // [env.lower.lo, env.upper.hi] and [r.lower.lo, r.upper.hi] must intersect
            bool meet = mpfr_cmp(env.lower.lo(), r.upper.hi()) <= 0 && mpfr_cmp(r.lower.lo(), env.upper.hi()) <= 0;
            if (!meet) bad.push_back(n + s);
            ++checked;
        }
    }
    return {bad.empty(), std::to_string(checked) + " (n, s) pairs in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                             "], disjoint: " + join(bad)};
}

Outcome c12()
{
    long checked = 0;
    std::string worst;
    for (long k = 1; k <= 30; ++k)
        for (long n = 0; n <= 100; ++n)
            for (long r = 0; r < 2 * k; ++r) {
                ComplexEnclosure z = kloosterman_u(k, n, r, 128);
                ++checked;
                // |K|^2 <= k^2, allowing the enclosure to touch k^2 when equality holds
                if (!certainly_less_equal(z.abs_sq(), IntervalReal(k * k, 128)) && !z.abs_sq().contains(k * k))
                    return {false, "violated at k=" + std::to_string(k) + " n=" + std::to_string(n) + " r=" + std::to_string(r)};
            }
    return {true, std::to_string(checked) + " sums bounded"};
}

Outcome c13()
{
    const long to = campaign_end(12000);
    auto base = campaign_options();
    base.chunk_size = 1000;
    VerifyOptions a = base, b = base;
    a.workers = 2;
    b.workers = 8;
    auto ra = verify_turan_range(1001, to, a);
    auto rb = verify_turan_range(1001, to, b);

    auto path = std::filesystem::temp_directory_path() / ("unimodal_acceptance_" + std::to_string(::getpid()) + ".jsonl");
    std::filesystem::remove(path);
    VerifyOptions k = base;
    k.workers = 2;
    k.checkpoint = path;
    k.stop_after_chunks = 3;
    auto killed = verify_turan_range(1001, to, k);
    k.stop_after_chunks = -1;
    k.resume = true;
    auto resumed = verify_turan_range(1001, to, k);
    std::filesystem::remove(path);

    bool same = ra.status_fingerprint() == rb.status_fingerprint() && ra.status_fingerprint() == resumed.status_fingerprint();
    std::ostringstream d;
    d << "range 1001.." << to << ", " << ra.records.size() << " records; 2 vs 8 workers "
      << (ra.status_fingerprint() == rb.status_fingerprint() ? "identical" : "DIFFER") << "; kill after "
      << killed.records.size() << " chunks + resume (" << resumed.chunks_skipped << " reused) "
      << (ra.status_fingerprint() == resumed.status_fingerprint() ? "identical" : "DIFFERS");
    if (!full_run()) d << "; reduced range";
    return {same && killed.interrupted && !resumed.interrupted, d.str()};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"exact-oracle equivalence (n <= 500)", c1},
        {"Turan exception set on 1..3000", c2},
        {"log-concavity exception set on 1..3000", c3},
        {"published closed forms contained", c4},
        {"normalized constants A..E contained", c5},
        {"N=12 error constants and validity range", c6},
        {"threshold checkpoints 78304, 8492967488, 9.4e9", c7},
        {"sandwich u-(30,75) <= u <= u+(30,75) on 1001..3000", c8},
        {"Turan campaign with (M,L)=(75,30) from 1001", c9},
        {"exact-formula probe within remainder", c10},
        {"N=3 envelopes meet Rademacher enclosures (200,35)", c11},
        {"Kloosterman magnitude |K_k| <= k", c12},
        {"campaign determinism and resume", c13},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i + 1);
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[i].first << " -- " << o.detail << " ("
                  << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
