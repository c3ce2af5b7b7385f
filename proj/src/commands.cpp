#include "narep/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "narep/baker_bounds.hpp"
#include "narep/errors.hpp"
#include "narep/expected_solutions.hpp"
#include "narep/narayana_seq.hpp"
#include "narep/repdigit.hpp"

namespace narep {

namespace {

struct Section {
    std::string name;
    Table table;
};

// Several tables in one report: headed blocks for table/CSV, one object for JSON.
void write_sections(std::ostream& out, const std::vector<Section>& sections, OutputFormat f) {
    if (f == OutputFormat::Json) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::object();
        for (const auto& s : sections) {
            std::ostringstream part;
            s.table.write(part, f);
            doc[s.name] = nlohmann::ordered_json::parse(part.str());
        }
        out << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < sections.size(); ++i) {
        if (i) out << '\n';
        out << "# " << sections[i].name << '\n';
        sections[i].table.write(out, f);
    }
}

std::string rep_list(const std::vector<std::pair<unsigned, std::string>>& reps) {
    std::string out;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (i) out += " ";
        out += reps[i].second + "_" + std::to_string(reps[i].first);
    }
    return out;
}

} // namespace

void RunConfig::validate() const {
    if (base_min < 2) throw ConfigError("--base-min must be at least 2");
    if (base_max < base_min) throw ConfigError("--base-max must not be below --base-min");
    if (base_max > kMaxSupportedBase) throw ConfigError("--base-max must be at most " + std::to_string(kMaxSupportedBase));
    if (n_max < 4) throw ConfigError("--n-max must be at least 4");
    if (precision_bits < 256) throw ConfigError("--precision must be at least 256 bits");
    if (M < 1) throw ConfigError("--big-m must be at least 1");
    if (parallel_workers < 1) throw ConfigError("--workers must be at least 1");
}

ReductionOptions RunConfig::reduction_options() const {
    ReductionOptions o;
    o.precision = precision_bits;
    o.M = M;
    o.workers = parallel_workers;
    o.strict_paper = strict_paper;
    return o;
}

long default_precision() {
    const char* env = std::getenv(kPrecisionEnv);
    if (env == nullptr || *env == '\0') return 1024;
    long v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(std::string(kPrecisionEnv) + " must be an integer, got '" + env + "'");
    }
    return v;
}

int cmd_seq(std::int64_t from, std::int64_t to, const RunConfig& cfg, std::ostream& out) {
    sequence_table(from, narayana_range(from, to)).write(out, cfg.output_format);
    return kExitOk;
}

int cmd_search(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    SearchOptions so;
    so.base_min = cfg.base_min;
    so.base_max = cfg.base_max;
    so.n_max = cfg.n_max;
    so.enforce_ordering = cfg.enforce_ordering;
    so.workers = cfg.parallel_workers;
    search_table(search_hits(so)).write(out, cfg.output_format);
    return kExitOk;
}

int cmd_bound(unsigned rho, const RunConfig& cfg, std::ostream& out) {
    if (rho < 2) throw ConfigError("--rho must be at least 2");
    bound_table(initial_n_bound(rho)).write(out, cfg.output_format);
    return kExitOk;
}

int cmd_reduce(unsigned rho, const std::string& step, long ell_max, long m_max, const RunConfig& cfg,
               std::ostream& out) {
    cfg.validate();
    if (rho < 2) throw ConfigError("--rho must be at least 2");
    int last = 0;
    if (step == "all") last = 3;
    else if (step == "1" || step == "2" || step == "3") last = step[0] - '0';
    else throw ConfigError("--step must be 1, 2, 3 or all");
    const int first = step == "all" ? 1 : last;

    const ReductionOptions opt = cfg.reduction_options();
    Table table = step_table({});
    int code = kExitOk;
    int current = 1;
    try {
        const TauContext ctx = make_tau_context(rho, opt);
        std::vector<StepReport> reports;
        long L = ell_max;
        long Mm = m_max;
        if (first == 1 || (last >= 2 && L <= 0)) {
            current = 1;
            reports.push_back(step1(rho, opt, &ctx));
            if (L <= 0) L = reports.back().bound;
        }
        if (last == 2 || (last == 3 && (first <= 2 || Mm <= 0))) {
            current = 2;
            reports.push_back(step2(rho, L, opt, &ctx));
            if (Mm <= 0) Mm = reports.back().bound;
        }
        if (last == 3) {
            current = 3;
            reports.push_back(step3(rho, L, Mm, opt, &ctx));
        }
        for (const auto& r : reports) {
            if (r.step >= first) table.rows.push_back(step_table({r}).rows.front());
        }
    } catch (const EpsilonNeverPositive& e) {
        append_rows(table, step_failure_row(current, rho, e.what()));
        code = kExitReductionFailed;
    }
    table.write(out, cfg.output_format);
    return code;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    self_check_expected_solutions();
    if (cfg.base_min != 2 || cfg.base_max != 10) {
        throw ConfigError("verify compares against the solution list for bases 2..10; do not change the base range");
    }
    const ReductionOptions opt = cfg.reduction_options();

    Table reduction{{"rho", "ell_max", "m_max", "n_max", "status"}, {}, {true, true, true, true, false}};
    Table steps = step_table({});
    long n_bound = 0;
    bool reduction_failed = false;
    for (unsigned rho = cfg.base_min; rho <= cfg.base_max; ++rho) {
        try {
            const ReductionSummary s = full_reduction(rho, opt);
            reduction.rows.push_back({std::to_string(rho), std::to_string(s.ell_max), std::to_string(s.m_max),
                                      std::to_string(s.n_max), "ok"});
            append_rows(steps, step_table(s.steps));
            n_bound = std::max(n_bound, s.n_max);
        } catch (const EpsilonNeverPositive& e) {
            reduction.rows.push_back({std::to_string(rho), "", "", "", std::string("failed: ") + e.what()});
            reduction_failed = true;
        }
    }

    SearchOptions so;
    so.base_min = cfg.base_min;
    so.base_max = cfg.base_max;
    so.n_max = std::max<std::int64_t>(cfg.n_max, n_bound);
    so.enforce_ordering = cfg.enforce_ordering;
    so.workers = cfg.parallel_workers;
    const std::vector<SearchHit> hits = search_hits(so);

    std::map<BigInt, std::pair<std::int64_t, std::vector<std::pair<unsigned, std::string>>>> found;
    for (const auto& h : hits) {
        auto& slot = found[h.value];
        slot.first = h.n;
        slot.second.emplace_back(h.base, render_digits(h.digits));
    }

    Table comparison{{"value", "n", "status", "listed", "found", "missing"}, {}, {false, true, false, false, false, false}};
    bool mismatch = false;
    std::set<BigInt> expected_values;
    for (const auto& e : expected_solutions()) {
        const BigInt value(static_cast<unsigned long>(e.value));
        expected_values.insert(value);
        std::vector<std::pair<unsigned, std::string>> listed;
        for (const auto& r : e.representations) listed.emplace_back(r.base, r.digits);
        std::sort(listed.begin(), listed.end());
        auto it = found.find(value);
        std::vector<std::pair<unsigned, std::string>> have;
        if (it != found.end()) have = it->second.second;
        std::vector<std::pair<unsigned, std::string>> missing;
        for (const auto& l : listed) {
            if (std::find(have.begin(), have.end(), l) == have.end()) missing.push_back(l);
        }
        std::string status = "ok";
        if (it == found.end()) status = "missing";
        else if (!missing.empty()) status = "representation missing";
        mismatch = mismatch || status != "ok";
        comparison.rows.push_back({value.get_str(), std::to_string(e.n), status, rep_list(listed), rep_list(have),
                                   rep_list(missing)});
    }
    for (const auto& [value, info] : found) {
        if (expected_values.count(value)) continue;
        mismatch = true;
        comparison.rows.push_back({value.get_str(), std::to_string(info.first), "extra", "", rep_list(info.second), ""});
    }

    const std::string verdict = reduction_failed ? "reduction failed"
                                : mismatch       ? "mismatch"
                                                 : "match";
    Table summary{{"bases", "n_searched", "values_found", "values_expected", "result"},
                  {{std::to_string(cfg.base_min) + ".." + std::to_string(cfg.base_max),
                    "4.." + std::to_string(so.n_max), std::to_string(found.size()),
                    std::to_string(expected_solutions().size()), verdict}},
                  {false, false, true, true, false}};

    write_sections(out,
                   {{"reduction", reduction},
                    {"steps", steps},
                    {"comparison", comparison},
                    {"summary", summary}},
                   cfg.output_format);
    if (reduction_failed) return kExitReductionFailed;
    return mismatch ? kExitMismatch : kExitOk;
}

} // namespace narep
