#include "unimodal/unimodal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

using namespace unimodal;
using nlohmann::json;

namespace {

mpfr_prec_t bits_for_digits(long digits) { return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16; }

json interval_json(const IntervalReal& x, long digits)
{
    return {{"lo", IntervalReal::endpoint_string(x.lo(), static_cast<int>(digits), MPFR_RNDD)},
            {"hi", IntervalReal::endpoint_string(x.hi(), static_cast<int>(digits), MPFR_RNDU)},
            {"mid", x.mid_string(static_cast<int>(digits))}};
}

json complex_json(const ComplexEnclosure& z, long digits)
{
    return {{"re", interval_json(z.re, digits)}, {"im", interval_json(z.im, digits)}};
}

// "3/2", "1.5" or "2" -> twice the order
long parse_two_kappa(const std::string& s)
{
    if (auto slash = s.find('/'); slash != std::string::npos) {
        long p = std::stol(s.substr(0, slash)), q = std::stol(s.substr(slash + 1));
        if (q == 1) return 2 * p;
        if (q == 2) return p;
        throw std::invalid_argument("kappa must be an integer or half-integer");
    }
    double v = std::stod(s);
    double tv = 2 * v;
    if (std::abs(tv - std::round(tv)) > 1e-12) throw std::invalid_argument("kappa must be an integer or half-integer");
    return std::lround(tv);
}

json record_json(const VerificationRecord& r) { return r.to_json(); }

void print_summary(const CampaignSummary& s)
{
    for (auto& r : s.records) std::cout << record_json(r).dump() << '\n';
    auto list = [](const std::vector<long>& v) {
        std::string out;
        const std::size_t show = std::min<std::size_t>(v.size(), 40);
        for (std::size_t i = 0; i < show; ++i) out += (i ? "," : "") + std::to_string(v[i]);
        if (v.size() > show) out += ",... (" + std::to_string(v.size()) + " total)";
        return out.empty() ? std::string("none") : out;
    };
    std::cerr << "chunks: " << s.chunks_computed << " computed, " << s.chunks_skipped << " resumed";
    if (s.quarantined) std::cerr << ", " << s.quarantined << " checkpoint lines quarantined";
    std::cerr << "\nfailed: " << list(s.failed) << "\ninconclusive: " << list(s.inconclusive)
              << "\ncpu time: " << s.cpu_time << " s\n";
    if (s.interrupted) std::cerr << "campaign interrupted before completion\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact counts, certified enclosures and inequality verification for unimodal sequences"};
    app.require_subcommand(1);

    // exact
    auto* exact = app.add_subcommand("exact", "exact tables of u(n) or p2(n)");
    std::string kind = "u", format = "json", out_path;
    long n_max = 0;
    exact->add_option("--kind", kind)->check(CLI::IsMember({"u", "p2"}));
    exact->add_option("--n-max", n_max)->required()->check(CLI::NonNegativeNumber);
    exact->add_option("--out", out_path);
    exact->add_option("--format", format)->check(CLI::IsMember({"json", "binary"}));

    // sums
    auto* sums = app.add_subcommand("sums", "Dedekind and Kloosterman-type sums");
    sums->require_subcommand(1);
    long h = 0, k = 1, n = 0, m = 0, r = 0, digits = 30;
    auto* ded = sums->add_subcommand("dedekind", "s(h,k) as an exact rational");
    ded->set_help_flag("--help", "print this help"); // frees -h for --h
    ded->add_option("--h", h)->required();
    ded->add_option("--k", k)->required();
    auto* kp2 = sums->add_subcommand("kloosterman-p2", "A_k(n,m) for p2");
    kp2->add_option("--k", k)->required();
    kp2->add_option("--n", n)->required();
    kp2->add_option("--m", m);
    kp2->add_option("--digits", digits);
    auto* ku = sums->add_subcommand("kloosterman-u", "K_k(n,r) for u");
    ku->add_option("--k", k)->required();
    ku->add_option("--n", n)->required();
    ku->add_option("--r", r)->required();
    ku->add_option("--digits", digits);

    // special
    auto* special = app.add_subcommand("special", "special functions");
    special->require_subcommand(1);
    std::string kappa = "2", xval = "1";
    long ell = 0;
    auto* bes = special->add_subcommand("bessel-i", "modified Bessel function I_kappa(x)");
    bes->add_option("--kappa", kappa)->required();
    bes->add_option("--x", xval)->required();
    bes->add_option("--digits", digits);
    auto* phi = special->add_subcommand("phi-coeff", "Taylor coefficient a_ell");
    phi->add_option("--ell", ell)->required()->check(CLI::NonNegativeNumber);
    phi->add_option("--digits", digits);

    // coeffs / constants
    auto* coeffs = app.add_subcommand("coeffs", "asymptotic coefficients A_s(m) and error constants");
    int N = 12;
    long shift = 0;
    coeffs->add_option("--N", N);
    coeffs->add_option("--shift", shift)->check(CLI::NonNegativeNumber);
    coeffs->add_option("--digits", digits);
    coeffs->add_option("--format", format)->check(CLI::IsMember({"json"}));
    auto* constants = app.add_subcommand("constants", "error ledger and the rounded-constant audit");
    constants->add_option("--N", N);

    // enclose / certify / probe
    auto* enclose = app.add_subcommand("enclose", "certified enclosures");
    enclose->require_subcommand(1);
    long M = 75, L = 30, threshold = default_exact_threshold;
    auto* ep2 = enclose->add_subcommand("p2", "enclosure of p2(n)");
    ep2->add_option("--n", n)->required();
    ep2->add_option("--M", M);
    ep2->add_option("--digits", digits);
    ep2->add_option("--exact-threshold", threshold);
    auto* eu = enclose->add_subcommand("u", "enclosure of u(n)");
    eu->add_option("--n", n)->required();
    eu->add_option("--M", M);
    eu->add_option("--L", L);
    eu->add_option("--digits", digits);
    eu->add_option("--exact-threshold", threshold);
    auto* certify = app.add_subcommand("certify", "single-n certificates");
    certify->require_subcommand(1);
    auto* ct = certify->add_subcommand("turan", "four-term Turan certificate at n");
    ct->add_option("--n", n)->required();
    ct->add_option("--M", M);
    ct->add_option("--L", L);
    ct->add_option("--digits", digits);
    ct->add_option("--exact-threshold", threshold);
    auto* probe = app.add_subcommand("probe", "non-certified numerical probes");
    probe->require_subcommand(1);
    long kmax = 1;
    double tol = 1e-6;
    auto* pef = probe->add_subcommand("exact-formula", "truncated exact formula for u(n)");
    pef->add_option("--n", n)->required();
    pef->add_option("--kmax", kmax);
    pef->add_option("--tol", tol);

    // verify
    auto* verify = app.add_subcommand("verify", "range verification");
    verify->require_subcommand(1);
    long from = 1, to = 1, jshift = 1;
    int workers = 1;
    std::string schedule_path, checkpoint_path, config_path;
    bool resume = false;
    long vthreshold = 3000;
    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--from", from)->required();
        sc->add_option("--to", to)->required();
        sc->add_option("--schedule", schedule_path);
        sc->add_option("--workers", workers)->check(CLI::PositiveNumber);
        sc->add_option("--checkpoint", checkpoint_path);
        sc->add_flag("--resume", resume);
        sc->add_option("--exact-threshold", vthreshold);
    };
    auto* vt = verify->add_subcommand("turan", "higher-order Turan inequality");
    add_common(vt);
    auto* vl = verify->add_subcommand("logconcavity", "log-concavity");
    add_common(vl);
    auto* vc = verify->add_subcommand("convexity", "second j-shifted difference");
    add_common(vc);
    vc->add_option("--j", jshift)->required()->check(CLI::PositiveNumber);
    auto* vcamp = verify->add_subcommand("campaign", "run a campaign from a JSON config");
    vcamp->add_option("--config", config_path)->required();
    vcamp->add_flag("--resume", resume);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*exact) {
            CountTable t = kind == "u" ? u_table(n_max) : p2_table(n_max);
            if (format == "binary") {
                if (out_path.empty()) throw std::invalid_argument("--format binary needs --out");
                save_table(t, out_path);
            } else {
                json arr = json::array();
                for (auto& v : t.values) arr.push_back(v.get_str());
                if (out_path.empty())
                    std::cout << arr.dump() << '\n';
                else
                    std::ofstream(out_path) << arr.dump() << '\n';
            }
            return 0;
        }
        const mpfr_prec_t prec = bits_for_digits(digits);
        if (*ded) {
            std::cout << json{{"h", h}, {"k", k}, {"s", dedekind_sum(h, k).get_str()}}.dump() << '\n';
            return 0;
        }
        if (*kp2) {
            std::cout << json{{"k", k}, {"n", n}, {"m", m}, {"value", complex_json(kloosterman_p2(k, n, m, prec), digits)}}.dump()
                      << '\n';
            return 0;
        }
        if (*ku) {
            std::cout << json{{"k", k}, {"n", n}, {"r", r}, {"value", complex_json(kloosterman_u(k, n, r, prec), digits)}}.dump()
                      << '\n';
            return 0;
        }
        if (*bes) {
            IntervalReal x = IntervalReal::from_decimal(xval, prec + 16);
            std::cout << json{{"kappa", kappa}, {"x", xval}, {"value", interval_json(bessel_I(parse_two_kappa(kappa), x, prec), digits)}}.dump()
                      << '\n';
            return 0;
        }
        if (*phi) {
            std::cout << json{{"ell", ell}, {"value", interval_json(phi_coeff(static_cast<unsigned long>(ell), prec), digits)}}.dump()
                      << '\n';
            return 0;
        }
        if (*coeffs) {
            const mpfr_prec_t p = std::max<mpfr_prec_t>(prec, 256);
            CoefficientSet set = shift == 0 ? base_coefficients(N, p) : shifted_coefficients(N, shift, p);
            json A = json::array();
            for (auto& a : set.A) A.push_back(interval_json(a, digits));
            json j = {{"N", N}, {"shift", shift}, {"A", A}, {"C", interval_json(set.C, 8)},
                      {"cutoff", set.cutoff.get_str()}, {"nu", set.nu.get_str()}};
            if (set.shift) {
                j["C1..C5"] = {interval_json(set.shift->C1, 8), interval_json(set.shift->C2, 8), interval_json(set.shift->C3, 8),
                               interval_json(set.shift->C4, 8), interval_json(set.shift->C5, 8)};
                j["n1"] = set.shift->n1.get_str();
                j["n2"] = set.shift->n2.get_str();
            }
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*constants) {
            ErrorLedger e = error_constants(N, 256);
            json S = json::array();
            for (auto& v : e.S) S.push_back(interval_json(v, 10));
            json j = {{"N", N},
                      {"E0", interval_json(e.E0, 10)},
                      {"E1", interval_json(e.E1, 10)},
                      {"E2", interval_json(e.E2, 10)},
                      {"E3", interval_json(e.E3, 10)},
                      {"S", S},
                      {"R", e.R},
                      {"C_N", interval_json(e.C, 10)},
                      {"n_N", cutoff_nN(N, 256).get_str()}};
            if (N == 12) {
                json audit = json::array();
                mpz_class nu_max = 0;
                bool all_ok = true;
                for (long s = 0; s <= 3; ++s) {
                    CoefficientSet set = s == 0 ? base_coefficients(12) : shifted_coefficients(12, s);
                    IntervalReal bound = IntervalReal::from_decimal(rounded_error_constant(s), 256);
                    bool ok = certainly_less_equal(set.C, bound);
                    all_ok = all_ok && ok;
                    if (set.nu > nu_max) nu_max = set.nu;
                    audit.push_back({{"s", s}, {"C_12(s)", interval_json(set.C, 8)}, {"printed_bound", rounded_error_constant(s)},
                                     {"within_bound", ok}, {"nu", set.nu.get_str()}});
                }
                j["rounded_constant_audit"] = audit;
                j["max_nu"] = nu_max.get_str();
                j["max_nu_within_9.4e9-1"] = nu_max <= mpz_class("9399999999");
                j["audit_passed"] = all_ok && nu_max <= mpz_class("9399999999");
            }
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*ep2) {
            Enclosure e = p2_enclosure(M, n, prec, threshold);
            std::cout << json{{"n", n}, {"M", M}, {"provenance", e.provenance.describe()},
                              {"lower", interval_json(e.lower, digits)}, {"upper", interval_json(e.upper, digits)}}.dump()
                      << '\n';
            return 0;
        }
        if (*eu) {
            Enclosure e = u_enclosure(L, M, n, prec, threshold);
            std::cout << json{{"n", n}, {"M", M}, {"L", L}, {"provenance", e.provenance.describe()},
                              {"lower", interval_json(e.lower, digits)}, {"upper", interval_json(e.upper, digits)}}.dump()
                      << '\n';
            return 0;
        }
        if (*ct) {
            CertificateResult c = turan_certificate(L, M, n, prec, threshold);
            std::cout << json{{"n", n}, {"M", M}, {"L", L},
                              {"status", c.status == CertificateStatus::Verified ? "verified" : "inconclusive"},
                              {"certified_negative", c.negative}, {"value", interval_json(c.value, 12)}}.dump()
                      << '\n';
            return c.status == CertificateStatus::Verified ? 0 : 3;
        }
        if (*pef) {
            ProbeResult p = exact_formula_probe(n, kmax, tol);
            std::cout << json{{"n", n}, {"kmax", kmax}, {"value", p.value_text}, {"remainder_bound", p.remainder},
                              {"quadrature_error", p.quad_error}, {"certified", p.certified},
                              {"enclosure", interval_json(p.enclosure, 20)}}.dump()
                      << '\n';
            return 0;
        }
        if (*verify) {
            CampaignSummary s;
            if (*vcamp) {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot read " + config_path);
                CampaignConfig cfg = CampaignConfig::from_json(json::parse(in));
                if (resume) cfg.options.resume = true;
                s = run_campaign(cfg);
            } else {
                VerifyOptions opt;
                if (!schedule_path.empty()) opt.schedule = load_schedule(schedule_path);
                opt.workers = workers;
                opt.checkpoint = checkpoint_path;
                opt.resume = resume;
                opt.exact_threshold = vthreshold;
                if (*vt) s = verify_turan_range(from, to, opt);
                if (*vl) s = verify_logconcavity_range(from, to, opt);
                if (*vc) s = verify_convexity_range(jshift, from, to, opt);
            }
            print_summary(s);
            return s.exit_code();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
