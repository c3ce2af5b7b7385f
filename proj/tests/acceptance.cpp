// Acceptance checks. Usage: acceptance <id>|all, one PASS/FAIL line per check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "narep/baker_bounds.hpp"
#include "narep/dp_reduction.hpp"
#include "narep/expected_solutions.hpp"
#include "narep/hp_arith.hpp"
#include "narep/narayana_seq.hpp"
#include "narep/repdigit.hpp"
#include "narep/run_kernels.hpp"

using namespace narep;

namespace {

struct Result {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

struct CliRun {
    int status;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string(NAREP_CLI_PATH) + " " + args;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return {-1, ""};
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int raw = pclose(p);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

Result check_verify() {
    const auto t0 = Clock::now();
    const CliRun run = run_cli("verify --n-max 600 --format json");
    const double secs = seconds_since(t0);
    if (run.status != 0) return {false, "verify exited with " + std::to_string(run.status)};
    const auto doc = nlohmann::json::parse(run.out);

    std::map<std::string, std::set<std::string>> found;
    for (const auto& row : doc["comparison"]) {
        std::istringstream reps(row["found"].get<std::string>());
        std::string r;
        auto& slot = found[row["value"].get<std::string>()];
        while (reps >> r) slot.insert(r);
    }
    const std::set<std::string> want_values = {"4",   "6",    "9",    "13",   "19",   "28",   "41",
                                               "60",  "88",   "129",  "189",  "277",  "406",  "595",
                                               "872", "1278", "1873", "2745", "4023", "18560", "58425"};
    std::set<std::string> got_values;
    for (const auto& [v, reps] : found) {
        if (!reps.empty()) got_values.insert(v);
    }
    if (got_values != want_values) return {false, "value set differs: " + std::to_string(got_values.size()) + " values"};
    int reps_checked = 0;
    for (const auto& e : expected_solutions()) {
        const auto& have = found[std::to_string(e.value)];
        for (const auto& r : e.representations) {
            ++reps_checked;
            if (!have.count(r.digits + "_" + std::to_string(r.base))) {
                return {false, "missing " + r.digits + "_" + std::to_string(r.base) + " for " + std::to_string(e.value)};
            }
        }
    }
    const bool fast = secs < 60;
    return {fast, "21 values, " + std::to_string(reps_checked) + " listed representations present, " + fmt(secs) +
                      " s (limit 60 s)"};
}

Result check_matveev() {
    const double want[] = {3.722e13, 3.489e26, 1.303e40};
    std::string detail;
    bool ok = true;
    int i = 0;
    for (LinearForm f : {LinearForm::Lambda1, LinearForm::Lambda2, LinearForm::Lambda3}) {
        const PrecisionReal c = form_coefficient(f);
        const PrecisionReal ceil = form_coefficient_ceiling(f);
        const bool below = certainly_less(c, ceil);
        const bool close = c.lower() >= 0.995 * ceil.upper();
        const bool expected = std::fabs(c.midpoint() / want[i] - 1) < 1e-3;
        ok = ok && below && close && expected;
        const double gap = 100 * (1 - c.midpoint() / ceil.midpoint());
        detail += (i ? ", " : "") + fmt(c.midpoint()) + " vs " + fmt(ceil.midpoint()) + " (" +
                  (below ? "below" : "ABOVE") + ", gap " + fmt(gap) + "%" + (close ? "" : " exceeds 0.5%") + ")";
        ++i;
    }
    return {ok, detail};
}

Result check_initial_bound() {
    const InitialBoundReport rep = initial_n_bound(2);
    const PrecisionReal cap = PrecisionReal::from_decimal("5.6e48", 128) * pow(log(PrecisionReal::from_long(2, 128)), 7);
    bool ok = rep.lemma3_bound.lower() >= 4.0e47 && rep.lemma3_bound.upper() <= 4.3e47 &&
              certainly_less(rep.lemma3_bound, cap);
    int log_fail = 0;
    for (unsigned rho = 2; rho <= 100; ++rho) {
        const PrecisionReal r = PrecisionReal::from_long(rho, 128);
        const PrecisionReal lhs = PrecisionReal::from_decimal("95.42", 128) + log(log(r)).mul(4);
        const PrecisionReal rhs = log(r).mul(136);
        const bool holds = certainly_less(lhs, rhs);
        if (holds != initial_n_bound(rho).log_check_passed || !holds) ++log_fail;
    }
    ok = ok && log_fail == 0;
    return {ok, "rho=2 bound " + fmt(rep.lemma3_bound.midpoint()) + ", cap " + fmt(cap.midpoint()) +
                    ", log check failures for rho 2..100: " + std::to_string(log_fail)};
}

Result check_rho2_chain() {
    const auto t0 = Clock::now();
    const ReductionSummary s = full_reduction(2, ReductionOptions{});
    const StepReport& s1 = s.steps.front();
    const bool q_ok = s1.worst.q > BigInt("12") * pow_ui(10, 51);
    const bool eps_ok = s1.epsilon_min >= 0.28;
    const bool ell_ok = std::labs(s.ell_max - 184) <= 5;
    const bool n_ok = std::labs(s.n_max - 201) <= 5;
    const double secs = seconds_since(t0);
    return {q_ok && eps_ok && ell_ok && n_ok && secs < 60,
            "q_" + std::to_string(s1.worst.convergent_index) + " has " + std::to_string(s1.worst.q.get_str().size()) +
                " digits, eps >= " + fmt(s1.epsilon_min) + ", ell <= " + std::to_string(s.ell_max) + ", m <= " +
                std::to_string(s.m_max) + ", n <= " + std::to_string(s.n_max) + ", " + fmt(secs) + " s"};
}

Result check_full_sweeps() {
    const auto t0 = Clock::now();
    ReductionOptions opt;
    opt.workers = 8;
    const ReductionSummary s5 = full_reduction(5, opt);
    const ReductionSummary s10 = full_reduction(10, opt);
    const double secs = seconds_since(t0);
    return {s5.n_max <= 92 && s10.n_max <= 69 && secs < 1800,
            "rho=5 n <= " + std::to_string(s5.n_max) + " (limit 92), rho=10 n <= " + std::to_string(s10.n_max) +
                " (limit 69), " + fmt(secs) + " s"};
}

// alpha^(n-2) <= N_n <= alpha^(n-1) exactly as classically stated.
Result check_lemma_bracket() {
    std::int64_t first_lower = 0;
    std::int64_t first_upper = 0;
    int lower_fail = 0;
    int shifted_fail = 0;
    for (std::int64_t n = 1; n <= 1000; ++n) {
        const BigInt v = narayana(n);
        const GrowthCheck g = check_growth_bracket(n, v, 2);
        if (!g.lower_holds) {
            ++lower_fail;
            if (!first_lower) first_lower = n;
        }
        if (!g.upper_holds && !first_upper) first_upper = n;
        if (n >= 3 && !check_growth_bracket(n, v, 3).lower_holds) ++shifted_fail;
    }
    std::string detail = "upper bound " + std::string(first_upper ? "fails at n=" + std::to_string(first_upper) : "holds") +
                         "; lower bound alpha^(n-2) fails for " + std::to_string(lower_fail) + " of 1000 indices";
    if (first_lower) detail += " (first n=" + std::to_string(first_lower) + ")";
    detail += "; alpha^(n-3) lower bound fails for " + std::to_string(shifted_fail) + " indices in 3..1000";
    return {first_upper == 0 && lower_fail == 0, detail};
}

Result check_binet() {
    int fail = 0;
    std::int64_t first = 0;
    for (std::int64_t n = 2; n <= 500; ++n) {
        const bool ok = certainly_less(binet_residual(n, 1024), binet_residual_bound(n, 1024));
        if (!ok) {
            ++fail;
            if (!first) first = n;
        }
    }
    return {fail == 0, std::to_string(499 - fail) + " of 499 indices certified below alpha^(-n/2)" +
                           (first ? ", first failure n=" + std::to_string(first) : "")};
}

Result check_tau_cf() {
    int det_fail = 0;
    int approx_fail = 0;
    std::size_t exhaustive = 0;
    for (unsigned rho = 2; rho <= 10; ++rho) {
        const RealFn tau = tau_fn(rho);
        const ContinuedFraction cf = cf_expand_escalating(tau, 200);
        if (cf.size() < 200) return {false, "fewer than 200 certified terms for rho=" + std::to_string(rho)};
        const auto& c = cf.convergents;
        for (std::size_t k = 1; k < c.size(); ++k) {
            const BigInt det = c[k].p * c[k - 1].q - c[k - 1].p * c[k].q;
            if (det != ((k % 2) ? 1 : -1)) ++det_fail;
        }
        long bits = 1024;
        while (static_cast<long>(mpz_sizeinbase(c.back().q.get_mpz_t(), 2)) * 2 + 128 > bits) bits *= 2;
        const PrecisionReal t = tau(bits);
        auto dist = [&](const BigInt& q, const BigInt& p) { return abs(t.mul(q) - PrecisionReal::from_integer(p, bits)); };
        // 1 / (q_k + q_(k+1)) < |q_k tau - p_k| < 1 / q_(k+1) pins each convergent as a best approximation
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            const PrecisionReal d = dist(c[k].q, c[k].p);
            const PrecisionReal one = PrecisionReal::from_long(1, bits);
            const bool lo = certainly_less(one / PrecisionReal::from_integer(c[k].q + c[k + 1].q, bits), d);
            const bool hi = certainly_less(d, one / PrecisionReal::from_integer(c[k + 1].q, bits));
            if (!lo || !hi) ++approx_fail;
        }
        // exhaustive: no q < q_(k+1) comes closer than q_k, for small denominators
        for (std::size_t k = 0; k + 1 < c.size() && c[k + 1].q <= 5000; ++k) {
            const PrecisionReal best = nearest_int_distance(t.mul(c[k].q));
            for (unsigned long q = 1; BigInt(q) < c[k + 1].q; ++q) {
                ++exhaustive;
                if (BigInt(q) == c[k].q) continue;
                if (certainly_less(nearest_int_distance(t.mul(static_cast<long>(q))), best)) ++approx_fail;
            }
        }
    }
    return {det_fail == 0 && approx_fail == 0,
            "200 terms for rho 2..10, determinant failures " + std::to_string(det_fail) +
                ", best-approximation failures " + std::to_string(approx_fail) + " (" + std::to_string(exhaustive) +
                " denominators checked exhaustively)"};
}

Result check_round_trip() {
    std::mt19937_64 rng(20240521);
    int fail = 0;
    for (int i = 0; i < 10000; ++i) {
        ConcatPattern p;
        p.base = 2 + static_cast<unsigned>(rng() % 9);
        p.d1 = 1 + static_cast<unsigned>(rng() % (p.base - 1));
        p.d2 = static_cast<unsigned>(rng() % p.base);
        p.d3 = static_cast<unsigned>(rng() % p.base);
        p.ell = 1 + rng() % 40;
        p.m = 1 + rng() % 40;
        p.k = 1 + rng() % 40;
        const BigInt v = reconstruct(p);
        const DigitString ds = to_digits(v, p.base);
        bool ok = ds == expand(p) && from_digits(ds) == v;
        const auto pats = three_block_patterns(ds, false);
        bool listed = false;
        for (const auto& q : pats) listed = listed || q == p;
        if (!(ok && listed)) ++fail;
    }
    return {fail == 0, std::to_string(10000 - fail) + " of 10000 random patterns round-trip"};
}

Result check_golden_ratio() {
    const ContinuedFraction cf = cf_expand_escalating(
        [](long bits) { return (sqrt(PrecisionReal::from_long(5, bits)) + PrecisionReal::from_long(1, bits)).div(2); },
        50);
    int ones = 0;
    for (std::size_t i = 0; i < cf.size() && i < 50; ++i) ones += cf.partial_quotients[i] == 1;
    return {ones == 50, std::to_string(ones) + " of 50 partial quotients equal 1"};
}

// Every value below rho^12 is marked by enumerating d1^ell d2^m d3^k with
// ell + m + k <= 12, then compared with the run-profile test.
Result check_detection_oracle() {
    std::string detail;
    bool ok = true;
    for (unsigned rho : {2u, 3u, 5u}) {
        const std::uint64_t limit = static_cast<std::uint64_t>(std::pow(rho, 12) + 0.5);
        std::vector<bool> oracle(limit, false);
        std::vector<std::uint64_t> pw(13, 1);
        for (int i = 1; i <= 12; ++i) pw[i] = pw[i - 1] * rho;
        auto rep = [&](std::uint64_t d, int len) { return d * (pw[len] - 1) / (rho - 1); };
        for (unsigned d1 = 1; d1 < rho; ++d1)
            for (unsigned d2 = 0; d2 < rho; ++d2)
                for (unsigned d3 = 0; d3 < rho; ++d3)
                    for (int l = 1; l <= 10; ++l)
                        for (int m = 1; l + m <= 11; ++m)
                            for (int k = 1; l + m + k <= 12; ++k)
                                oracle[rep(d1, l) * pw[m + k] + rep(d2, m) * pw[k] + rep(d3, k)] = true;

        std::uint64_t mismatches = 0;
        std::uint64_t isa_mismatches = 0;
        std::uint64_t hits = 0;
        const std::size_t chunk = 1 << 16;
        std::vector<std::uint64_t> vals(chunk);
        std::vector<kernels::RunProfile> scalar(chunk);
        std::vector<kernels::RunProfile> best(chunk);
        const bool avx2 = kernels::isa_available(kernels::Isa::Avx2);
        for (std::uint64_t start = 0; start < limit; start += chunk) {
            const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(chunk, limit - start));
            for (std::size_t i = 0; i < n; ++i) vals[i] = start + i;
            const std::span<const std::uint64_t> in(vals.data(), n);
            kernels::run_profiles(in, rho, std::span(scalar.data(), n), kernels::Isa::Scalar);
            if (avx2) kernels::run_profiles(in, rho, std::span(best.data(), n), kernels::Isa::Avx2);
            for (std::size_t i = 0; i < n; ++i) {
                const bool detected = scalar[i].digits >= 3 && scalar[i].runs <= 3;
                hits += detected;
                if (detected != oracle[start + i]) ++mismatches;
                if (avx2 && !(best[i] == scalar[i])) ++isa_mismatches;
            }
        }
        // the library's string path on a sample
        std::mt19937_64 rng(rho);
        for (int i = 0; i < 20000; ++i) {
            const std::uint64_t v = rng() % limit;
            const bool detected = !three_block_patterns(to_digits(BigInt(static_cast<unsigned long>(v)), rho), false).empty();
            if (detected != oracle[v]) ++mismatches;
        }
        ok = ok && mismatches == 0 && isa_mismatches == 0;
        detail += (detail.empty() ? "" : "; ") + std::string("rho=") + std::to_string(rho) + ": " + std::to_string(hits) +
                  " hits, " + std::to_string(mismatches) + " oracle mismatches, " +
                  (avx2 ? std::to_string(isa_mismatches) + " avx2/scalar mismatches" : "avx2 unavailable");
    }
    return {ok, detail};
}

Result check_determinism() {
    const CliRun a = run_cli("verify --workers 1");
    const CliRun b = run_cli("verify --workers 8");
    const bool same = a.status == b.status && a.out == b.out && !a.out.empty();
    return {same, "exit codes " + std::to_string(a.status) + "/" + std::to_string(b.status) + ", " +
                      std::to_string(a.out.size()) + " and " + std::to_string(b.out.size()) + " bytes, " +
                      (a.out == b.out ? "identical" : "different")};
}

struct Criterion {
    std::string id;
    std::string name;
    std::function<Result()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {"1", "verify reproduces the 21 solutions", check_verify},
        {"2", "Matveev coefficients", check_matveev},
        {"3", "initial bound and log check", check_initial_bound},
        {"4", "rho=2 reduction chain", check_rho2_chain},
        {"5", "full sweeps for rho 5 and 10", check_full_sweeps},
        {"6a", "growth bracket alpha^(n-2) <= N_n <= alpha^(n-1)", check_lemma_bracket},
        {"6b", "Binet residual", check_binet},
        {"6c", "continued fraction of tau", check_tau_cf},
        {"6d", "pattern round trip", check_round_trip},
        {"6e", "golden ratio expansion", check_golden_ratio},
        {"6f", "three-block detection oracle", check_detection_oracle},
        {"7", "determinism across worker counts", check_determinism},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <id>|all\n";
        return 2;
    }
    const std::string want = argv[1];
    bool any = false;
    bool all_pass = true;
    for (const auto& c : criteria()) {
        if (want != "all" && want != c.id) continue;
        any = true;
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (r.pass ? "PASS " : "FAIL ") << c.id << " " << c.name << ": " << r.detail << std::endl;
        all_pass = all_pass && r.pass;
    }
    if (!any) {
        std::cerr << "unknown criterion " << want << '\n';
        return 2;
    }
    return all_pass ? 0 : 1;
}
