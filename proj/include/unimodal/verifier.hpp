#pragma once

// Range verification of the Turan, log-concavity and shifted-convexity
// inequalities for u(n): exact integers below a threshold, interval
// certificates above it, chunked over a worker pool with a resumable
// JSON-lines checkpoint.

#include "unimodal/asymptotic.hpp"
#include "unimodal/exact_counts.hpp"
#include "unimodal/rademacher.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace unimodal {

struct ScheduleEntry {
    long n1 = 0, n2 = 0, M = 0, L = 0;
};

// Truncation parameters used for n1 <= n <= n2.
inline std::vector<ScheduleEntry> default_schedule()
{
    return {
        {1000, 100000, 75, 30},
        {100000, 500000, 110, 30},
        {500000, 1000000, 150, 30},
        {1000000, 4000000, 200, 35},
        {4000000, 10000000, 400, 35},
        {10000000, 20000000, 500, 35},
        {20000000, 80000000, 600, 35},
        {80000000, 100000000, 700, 35},
        {100000000, 110000000, 750, 35},
        {110000000, 790000000, 1000, 40},
        {790000000, 1000000000, 1300, 40},
        {1000000000, 9400000000, 2000, 40},
    };
}

inline void validate_schedule(const std::vector<ScheduleEntry>& s)
{
    if (s.empty()) throw std::invalid_argument("schedule is empty");
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& e = s[i];
        if (e.n1 > e.n2 || e.M < 0 || e.L < 0) throw std::invalid_argument("bad schedule entry");
        if (i > 0 && e.n1 > s[i - 1].n2 + 1) throw std::invalid_argument("schedule has a gap");
    }
}

// Index of the first row covering n; rows beyond either end clamp.
inline std::size_t schedule_row(const std::vector<ScheduleEntry>& s, long n)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        if (n <= s[i].n2) return i;
    return s.size() - 1;
}

enum class InequalityKind { Turan, LogConcave, Convexity };

struct Inequality {
    InequalityKind kind = InequalityKind::Turan;
    long j = 0; // shift for convexity

    std::string name() const
    {
        switch (kind) {
        case InequalityKind::Turan: return "turan";
        case InequalityKind::LogConcave: return "logconcave";
        case InequalityKind::Convexity: return "convexity(" + std::to_string(j) + ")";
        }
        return "?";
    }

    static Inequality parse(const std::string& s)
    {
        if (s == "turan") return {InequalityKind::Turan, 0};
        if (s == "logconcave" || s == "logconcavity") return {InequalityKind::LogConcave, 0};
        if (s.rfind("convexity(", 0) == 0 && s.back() == ')')
            return {InequalityKind::Convexity, std::stol(s.substr(10, s.size() - 11))};
        throw std::invalid_argument("unknown inequality: " + s);
    }

    long min_n() const
    {
        switch (kind) {
        case InequalityKind::Turan: return 1;
        case InequalityKind::LogConcave: return 1;
        case InequalityKind::Convexity: return 2 * j + 1;
        }
        return 1;
    }

    bool operator==(const Inequality&) const = default;
};

enum class RecordStatus { Verified, Failed, Inconclusive };

inline std::string to_string(RecordStatus s)
{
    switch (s) {
    case RecordStatus::Verified: return "verified";
    case RecordStatus::Failed: return "failed";
    case RecordStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline RecordStatus parse_status(const std::string& s)
{
    if (s == "verified") return RecordStatus::Verified;
    if (s == "failed") return RecordStatus::Failed;
    if (s == "inconclusive") return RecordStatus::Inconclusive;
    throw std::invalid_argument("unknown status: " + s);
}

struct VerificationRecord {
    long n1 = 0, n2 = 0;
    Inequality inequality;
    long M = 0, L = 0;       // largest parameters actually used (0 on the exact route)
    mpfr_prec_t prec = 0;    // largest precision actually used
    RecordStatus status = RecordStatus::Verified;
    std::vector<long> failed;
    std::vector<long> inconclusive;
    double wall_time = 0;
    int worker_id = 0;
    std::optional<std::string> analytic_cutoff; // n_Delta(j) for convexity

    // The part of a record that is reproducible bit for bit.
    std::string status_fields() const
    {
        nlohmann::json j = {{"n1", n1}, {"n2", n2}, {"inequality", inequality.name()},
                            {"status", to_string(status)}, {"failed", failed}, {"inconclusive", inconclusive}};
        return j.dump();
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j = {{"type", "record"},   {"n1", n1},         {"n2", n2},
                            {"inequality", inequality.name()}, {"M", M}, {"L", L},
                            {"prec", prec},       {"status", to_string(status)},
                            {"failed", failed},   {"inconclusive", inconclusive},
                            {"wall_time", wall_time}, {"worker_id", worker_id}};
        if (analytic_cutoff) j["analytic_cutoff"] = *analytic_cutoff;
        return j;
    }

    static VerificationRecord from_json(const nlohmann::json& j)
    {
        VerificationRecord r;
        r.n1 = j.at("n1").get<long>();
        r.n2 = j.at("n2").get<long>();
        r.inequality = Inequality::parse(j.at("inequality").get<std::string>());
        r.M = j.at("M").get<long>();
        r.L = j.at("L").get<long>();
        r.prec = j.at("prec").get<mpfr_prec_t>();
        r.status = parse_status(j.at("status").get<std::string>());
        r.failed = j.at("failed").get<std::vector<long>>();
        r.inconclusive = j.at("inconclusive").get<std::vector<long>>();
        r.wall_time = j.at("wall_time").get<double>();
        r.worker_id = j.at("worker_id").get<int>();
        if (j.contains("analytic_cutoff")) r.analytic_cutoff = j["analytic_cutoff"].get<std::string>();
        return r;
    }
};

inline std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

struct VerifyOptions {
    std::vector<ScheduleEntry> schedule = default_schedule();
    long exact_threshold = 3000;
    std::vector<mpfr_prec_t> precision_ladder = {128, 256, 512};
    long chunk_size = 10000;
    int workers = 1;
    std::filesystem::path checkpoint; // empty: no checkpoint
    bool resume = false;
    long stop_after_chunks = -1;     // simulated interruption after this many new records
    std::string campaign_id = "default";
};

// ---------------------------------------------------------------------------
// Exact route.

namespace detail {

inline mpz_class u_at(const CountTable& u, long n) { return u.at(n); }

inline mpz_class turan_exact(const CountTable& u, long n)
{
    mpz_class a0 = u_at(u, n - 1), a1 = u_at(u, n), a2 = u_at(u, n + 1), a3 = u_at(u, n + 2);
    mpz_class x = a1 * a1 - a0 * a2;
    mpz_class y = a2 * a2 - a1 * a3;
    mpz_class z = a1 * a2 - a0 * a3;
    return 4 * x * y - z * z;
}

// Returns true when the inequality holds at n.
inline bool exact_holds(const Inequality& ineq, const CountTable& u, long n)
{
    switch (ineq.kind) {
    case InequalityKind::Turan: return turan_exact(u, n) >= 0;
    case InequalityKind::LogConcave: return u_at(u, n) * u_at(u, n) >= u_at(u, n - 1) * u_at(u, n + 1);
    case InequalityKind::Convexity:
        return u_at(u, n) - 2 * u_at(u, n - ineq.j) + u_at(u, n - 2 * ineq.j) > 0;
    }
    return false;
}

// Shared read-only state of a campaign.
class SharedState {
public:
    SharedState(long exact_threshold) : threshold_(exact_threshold)
    {
        auto p2 = p2_table(exact_threshold + 2);
        u_ = std::make_shared<const CountTable>(u_from_p2(p2, exact_threshold + 2));
        p2_ = std::make_shared<const CountTable>(std::move(p2));
    }

    const CountTable& u() const { return *u_; }
    const std::shared_ptr<const CountTable>& p2() const { return p2_; }
    long threshold() const { return threshold_; }

    std::shared_ptr<KloostermanP2Cache> sums(mpfr_prec_t prec)
    {
        std::lock_guard lock(mu_);
        auto& slot = sums_[prec];
        if (!slot) slot = std::make_shared<KloostermanP2Cache>(prec);
        return slot;
    }

private:
    long threshold_;
    std::shared_ptr<const CountTable> u_, p2_;
    std::mutex mu_;
    std::map<mpfr_prec_t, std::shared_ptr<KloostermanP2Cache>> sums_;
};

enum class CertOutcome { Verified, Negative, Undecided };

inline CertOutcome outcome(const CertificateResult& r)
{
    if (r.status == CertificateStatus::Verified) return CertOutcome::Verified;
    return r.negative ? CertOutcome::Negative : CertOutcome::Undecided;
}

// Certificates for all of `ns` at one (M, L, prec).
inline std::map<long, CertOutcome> certify_batch(const Inequality& ineq, const std::vector<long>& ns, long M, long L,
                                                 mpfr_prec_t prec, SharedState& shared)
{
    auto eval = std::make_shared<const P2Evaluator>(M, prec, shared.threshold(), shared.p2(), shared.sums(prec));
    P2Memo memo(eval);
    auto src = [&](long a) -> const Enclosure& { return memo.get(a); };
    std::map<long, Enclosure> u;
    auto uget = [&](long n) -> const Enclosure& {
        auto it = u.find(n);
        if (it == u.end()) it = u.emplace(n, u_enclosure_with(L, n, src, M, prec)).first;
        return it->second;
    };
    std::map<long, CertOutcome> out;
    for (long n : ns) {
        CertificateResult r;
        switch (ineq.kind) {
        case InequalityKind::Turan: r = turan_certificate_from(uget(n - 1), uget(n), uget(n + 1), uget(n + 2)); break;
        case InequalityKind::LogConcave: r = logconcavity_certificate_from(uget(n - 1), uget(n), uget(n + 1)); break;
        case InequalityKind::Convexity:
            r = convexity_certificate_from(uget(n), uget(n - ineq.j), uget(n - 2 * ineq.j));
            break;
        }
        out[n] = outcome(r);
        // enclosures far behind the sweep are no longer needed
        while (!u.empty() && u.begin()->first < n - 2 * std::max<long>(ineq.j, 1) - 2) u.erase(u.begin());
    }
    return out;
}

} // namespace detail

// Verifies one chunk [n1, n2] (n1 >= ineq.min_n()).
inline VerificationRecord verify_chunk(const Inequality& ineq, long n1, long n2, const VerifyOptions& opt,
                                       detail::SharedState& shared, int worker_id = 0)
{
    const auto t0 = std::chrono::steady_clock::now();
    VerificationRecord rec;
    rec.n1 = n1;
    rec.n2 = n2;
    rec.inequality = ineq;
    rec.worker_id = worker_id;

    std::vector<long> pending;
    for (long n = n1; n <= n2; ++n) {
        if (n <= opt.exact_threshold) {
            if (!detail::exact_holds(ineq, shared.u(), n)) rec.failed.push_back(n);
        } else {
            pending.push_back(n);
        }
    }

    if (!pending.empty()) {
        // One scheduled row, then the next one up, each over the precision ladder.
        std::size_t row = schedule_row(opt.schedule, pending.front());
        const std::size_t last_row = std::min(row + 1, opt.schedule.size() - 1);
        for (std::size_t r = row; r <= last_row && !pending.empty(); ++r) {
            const auto& e = opt.schedule[r];
            rec.M = std::max(rec.M, e.M);
            rec.L = std::max(rec.L, e.L);
            std::vector<long> negative;
            for (mpfr_prec_t prec : opt.precision_ladder) {
                if (pending.empty()) break;
                rec.prec = std::max(rec.prec, prec);
                auto res = detail::certify_batch(ineq, pending, e.M, e.L, prec, shared);
                std::vector<long> undecided;
                for (long n : pending) {
                    switch (res[n]) {
                    case detail::CertOutcome::Verified: break;
                    case detail::CertOutcome::Negative: negative.push_back(n); break;
                    case detail::CertOutcome::Undecided: undecided.push_back(n); break;
                    }
                }
                pending = std::move(undecided);
            }
            pending.insert(pending.end(), negative.begin(), negative.end());
            std::sort(pending.begin(), pending.end());
        }
        rec.inconclusive = pending;
    }

    if (!rec.failed.empty())
        rec.status = RecordStatus::Failed;
    else if (!rec.inconclusive.empty())
        rec.status = RecordStatus::Inconclusive;
    if (ineq.kind == InequalityKind::Convexity) rec.analytic_cutoff = convexity_constants(ineq.j).cutoff.get_str();
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// ---------------------------------------------------------------------------
// Checkpoint: a header line, then one record per line. Each line carries the
// SHA-256 of its body; lines that fail to parse or verify are moved to a
// quarantine file and their chunks are recomputed.

class Checkpoint {
public:
    Checkpoint(std::filesystem::path path, std::string campaign_id, std::string schedule_hash)
        : path_(std::move(path)), campaign_(std::move(campaign_id)), hash_(std::move(schedule_hash))
    {
    }

    static std::string line_for(const nlohmann::json& body)
    {
        nlohmann::json j = body;
        j["sha256"] = sha256_hex(body.dump());
        return j.dump();
    }

    // Loads valid records; returns false if the file does not exist.
    bool load(std::vector<VerificationRecord>& out, std::size_t& quarantined)
    {
        quarantined = 0;
        if (!std::filesystem::exists(path_)) return false;
        std::ifstream in(path_);
        std::string line;
        std::vector<std::string> keep, bad;
        bool header_seen = false;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
                std::string sum = j.at("sha256").get<std::string>();
                nlohmann::json body = j;
                body.erase("sha256");
                if (sha256_hex(body.dump()) != sum) throw std::runtime_error("digest mismatch");
                if (j.at("type") == "header") {
                    if (j.at("schedule_hash").get<std::string>() != hash_)
                        throw std::invalid_argument("checkpoint belongs to a different schedule");
                    header_seen = true;
                } else {
                    out.push_back(VerificationRecord::from_json(body));
                }
                keep.push_back(line);
            } catch (const std::invalid_argument& e) {
                if (std::string(e.what()).find("different schedule") != std::string::npos) throw;
                bad.push_back(line);
            } catch (const std::exception&) {
                bad.push_back(line);
            }
        }
        in.close();
        if (!bad.empty() || !header_seen) {
            std::ofstream q(quarantine_path(), std::ios::app);
            for (auto& b : bad) q << b << '\n';
            quarantined = bad.size();
            std::ofstream rewrite(path_, std::ios::trunc);
            if (!header_seen) rewrite << header_line() << '\n';
            for (auto& k : keep) rewrite << k << '\n';
        }
        return true;
    }

    void start_fresh()
    {
        std::ofstream out(path_, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint " + path_.string());
        out << header_line() << '\n';
    }

    void append(const VerificationRecord& r)
    {
        std::lock_guard lock(mu_);
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("cannot append to checkpoint " + path_.string());
        out << line_for(r.to_json()) << '\n';
        out.flush();
        if (!out) throw std::runtime_error("checkpoint write failed (retriable)");
    }

    std::filesystem::path quarantine_path() const { return path_.string() + ".quarantine"; }

private:
    std::string header_line() const
    {
        return line_for({{"type", "header"}, {"campaign_id", campaign_}, {"schedule_hash", hash_}, {"version", 1}});
    }

    std::filesystem::path path_;
    std::string campaign_, hash_;
    std::mutex mu_;
};

inline std::string schedule_hash(const VerifyOptions& opt)
{
    nlohmann::json j;
    for (auto& e : opt.schedule) j["schedule"].push_back({e.n1, e.n2, e.M, e.L});
    j["ladder"] = opt.precision_ladder;
    j["exact_threshold"] = opt.exact_threshold;
    j["chunk_size"] = opt.chunk_size;
    return sha256_hex(j.dump());
}

// ---------------------------------------------------------------------------
// Campaigns.

struct RangeRequest {
    Inequality inequality;
    long from = 0, to = 0;
};

struct CampaignSummary {
    std::vector<VerificationRecord> records; // sorted by (inequality, n1)
    std::vector<long> failed;
    std::vector<long> inconclusive;
    double cpu_time = 0;
    std::size_t chunks_computed = 0;
    std::size_t chunks_skipped = 0;
    std::size_t quarantined = 0;
    bool interrupted = false;

    int exit_code() const
    {
        if (!failed.empty()) return 2;
        if (!inconclusive.empty() || interrupted) return 3;
        return 0;
    }

    std::string status_fingerprint() const
    {
        std::string s;
        for (auto& r : records) s += r.status_fields() + "\n";
        return s;
    }
};

// Chunk boundaries: multiples of chunk_size, split further at schedule rows.
inline std::vector<std::pair<long, long>> make_chunks(long from, long to, const VerifyOptions& opt)
{
    std::vector<std::pair<long, long>> out;
    long a = from;
    while (a <= to) {
        long b = std::min(to, (a / opt.chunk_size + 1) * opt.chunk_size);
        if (a > opt.exact_threshold) {
            const auto& row = opt.schedule[schedule_row(opt.schedule, a)];
            if (row.n2 >= a) b = std::min(b, row.n2);
        } else {
            b = std::min(b, std::max(a, opt.exact_threshold));
        }
        out.emplace_back(a, b);
        a = b + 1;
    }
    return out;
}

inline CampaignSummary run_ranges(const std::vector<RangeRequest>& ranges, const VerifyOptions& opt)
{
    validate_schedule(opt.schedule);
    if (opt.precision_ladder.empty()) throw std::invalid_argument("empty precision ladder");
    if (opt.chunk_size < 1 || opt.workers < 1) throw std::invalid_argument("chunk size and workers must be positive");

    struct Task {
        Inequality ineq;
        long n1, n2;
    };
    std::vector<Task> tasks;
    for (auto& r : ranges) {
        if (r.from < r.inequality.min_n())
            throw std::invalid_argument(r.inequality.name() + ": range must start at n >= " +
                                        std::to_string(r.inequality.min_n()));
        for (auto [a, b] : make_chunks(r.from, r.to, opt)) tasks.push_back({r.inequality, a, b});
    }

    CampaignSummary summary;
    std::vector<VerificationRecord> done;
    std::optional<Checkpoint> cp;
    if (!opt.checkpoint.empty()) {
        cp.emplace(opt.checkpoint, opt.campaign_id, schedule_hash(opt));
        std::vector<VerificationRecord> prior;
        bool existed = opt.resume && cp->load(prior, summary.quarantined);
        if (!existed) cp->start_fresh();
        for (auto& r : prior) done.push_back(std::move(r));
    }
    auto key = [](const Inequality& i, long a, long b) { return i.name() + ":" + std::to_string(a) + ":" + std::to_string(b); };
    std::map<std::string, VerificationRecord> by_key;
    for (auto& r : done) by_key.insert_or_assign(key(r.inequality, r.n1, r.n2), r);

    std::vector<Task> todo;
    for (auto& t : tasks) {
        if (by_key.count(key(t.ineq, t.n1, t.n2)))
            ++summary.chunks_skipped;
        else
            todo.push_back(t);
    }

    detail::SharedState shared(opt.exact_threshold);
    std::atomic<std::size_t> next{0};
    std::atomic<long> written{0};
    std::atomic<bool> stop{false};
    std::mutex result_mu;
    std::exception_ptr error;
    auto worker = [&](int id) {
        while (!stop) {
            const std::size_t i = next++;
            if (i >= todo.size()) return;
            try {
                VerificationRecord r = verify_chunk(todo[i].ineq, todo[i].n1, todo[i].n2, opt, shared, id);
                std::lock_guard lock(result_mu);
                if (stop) return;
                if (cp) cp->append(r);
                by_key.insert_or_assign(key(r.inequality, r.n1, r.n2), r);
                ++summary.chunks_computed;
                if (opt.stop_after_chunks >= 0 && ++written >= opt.stop_after_chunks) stop = true;
            } catch (...) {
                std::lock_guard lock(result_mu);
                if (!error) error = std::current_exception();
                stop = true;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nw = std::max(1, std::min<int>(opt.workers, static_cast<int>(std::max<std::size_t>(todo.size(), 1))));
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    for (auto& t : tasks) {
        auto it = by_key.find(key(t.ineq, t.n1, t.n2));
        if (it == by_key.end()) {
            summary.interrupted = true;
            continue;
        }
        const auto& r = it->second;
        summary.records.push_back(r);
        summary.failed.insert(summary.failed.end(), r.failed.begin(), r.failed.end());
        summary.inconclusive.insert(summary.inconclusive.end(), r.inconclusive.begin(), r.inconclusive.end());
        summary.cpu_time += r.wall_time;
    }
    return summary;
}

inline CampaignSummary verify_turan_range(long n1, long n2, const VerifyOptions& opt = {})
{
    return run_ranges({{{InequalityKind::Turan, 0}, n1, n2}}, opt);
}

inline CampaignSummary verify_logconcavity_range(long n1, long n2, const VerifyOptions& opt = {})
{
    return run_ranges({{{InequalityKind::LogConcave, 0}, n1, n2}}, opt);
}

inline CampaignSummary verify_convexity_range(long j, long n1, long n2, const VerifyOptions& opt = {})
{
    if (j < 1) throw std::invalid_argument("convexity shift j must be positive");
    return run_ranges({{{InequalityKind::Convexity, j}, n1, n2}}, opt);
}

// Config keys: ranges [{inequality, from, to, j?}], schedule [{n1,n2,M,L}],
// workers, precision_ladder, checkpoint, and optionally exact_threshold,
// chunk_size, campaign_id, resume.
struct CampaignConfig {
    std::vector<RangeRequest> ranges;
    VerifyOptions options;

    static CampaignConfig from_json(const nlohmann::json& j)
    {
        CampaignConfig c;
        for (auto& r : j.at("ranges")) {
            RangeRequest rr;
            std::string kind = r.at("inequality").get<std::string>();
            if (kind == "convexity")
                rr.inequality = {InequalityKind::Convexity, r.at("j").get<long>()};
            else
                rr.inequality = Inequality::parse(kind);
            rr.from = r.at("from").get<long>();
            rr.to = r.at("to").get<long>();
            c.ranges.push_back(rr);
        }
        if (j.contains("schedule")) {
            c.options.schedule.clear();
            for (auto& e : j["schedule"])
                c.options.schedule.push_back(
                    {e.at("n1").get<long>(), e.at("n2").get<long>(), e.at("M").get<long>(), e.at("L").get<long>()});
        }
        if (j.contains("workers")) c.options.workers = j["workers"].get<int>();
        if (j.contains("precision_ladder")) c.options.precision_ladder = j["precision_ladder"].get<std::vector<mpfr_prec_t>>();
        if (j.contains("checkpoint")) c.options.checkpoint = j["checkpoint"].get<std::string>();
        if (j.contains("exact_threshold")) c.options.exact_threshold = j["exact_threshold"].get<long>();
        if (j.contains("chunk_size")) c.options.chunk_size = j["chunk_size"].get<long>();
        if (j.contains("campaign_id")) c.options.campaign_id = j["campaign_id"].get<std::string>();
        if (j.contains("resume")) c.options.resume = j["resume"].get<bool>();
        return c;
    }
};

inline CampaignSummary run_campaign(const CampaignConfig& config) { return run_ranges(config.ranges, config.options); }

inline std::vector<ScheduleEntry> load_schedule(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read schedule " + path.string());
    nlohmann::json j = nlohmann::json::parse(in);
    const nlohmann::json& arr = j.is_array() ? j : j.at("schedule");
    std::vector<ScheduleEntry> s;
    for (auto& e : arr) s.push_back({e.at("n1").get<long>(), e.at("n2").get<long>(), e.at("M").get<long>(), e.at("L").get<long>()});
    validate_schedule(s);
    return s;
}

} // namespace unimodal
