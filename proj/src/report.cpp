#include "narep/report.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

#include "narep/errors.hpp"

namespace narep {

namespace {

std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string step_variable(int step) {
    switch (step) {
    case 1:
        return "ell";
    case 2:
        return "m";
    default:
        return "n";
    }
}

} // namespace

OutputFormat parse_format(std::string_view name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + std::string(name) + "' (expected table, csv or json)");
}

const char* format_name(OutputFormat f) {
    switch (f) {
    case OutputFormat::Table:
        return "table";
    case OutputFormat::Csv:
        return "csv";
    case OutputFormat::Json:
        return "json";
    }
    return "?";
}

void Table::write(std::ostream& os, OutputFormat f) const {
    switch (f) {
    case OutputFormat::Table: {
        std::vector<std::size_t> width(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
        }
        auto line = [&](const std::vector<std::string>& cells) {
            std::string out;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) out += "  ";
                out += cells[c];
                if (c + 1 < cells.size()) out.append(width[c] - cells[c].size(), ' ');
            }
            os << out << '\n';
        };
        line(columns);
        for (const auto& r : rows) line(r);
        break;
    }
    case OutputFormat::Csv: {
        for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_field(columns[c]);
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_field(r[c]);
            os << '\n';
        }
        break;
    }
    case OutputFormat::Json: {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < columns.size(); ++c) {
                const bool num = c < numeric.size() && numeric[c];
                if (num && !r[c].empty()) {
                    obj[columns[c]] = nlohmann::ordered_json::parse(r[c]);
                } else {
                    obj[columns[c]] = r[c];
                }
            }
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << '\n';
        break;
    }
    }
}

std::string render_pattern(const ConcatPattern& p) {
    auto block = [&](unsigned d, std::size_t len) {
        return render_digits(DigitString{p.base, {d}}) + "^" + std::to_string(len);
    };
    return block(p.d1, p.ell) + " " + block(p.d2, p.m) + " " + block(p.d3, p.k);
}

std::string format_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", std::max(digits - 1, 0), v);
    return buf;
}

Table sequence_table(std::int64_t from, const std::vector<BigInt>& values) {
    Table t{{"n", "value"}, {}, {true, false}};
    for (std::size_t i = 0; i < values.size(); ++i) {
        t.rows.push_back({std::to_string(from + static_cast<std::int64_t>(i)), values[i].get_str()});
    }
    return t;
}

Table search_table(const std::vector<SearchHit>& hits) {
    Table t{{"n", "value", "base", "digits", "patterns"}, {}, {true, false, true, false, false}};
    for (const auto& h : hits) {
        std::string pats;
        for (std::size_t i = 0; i < h.patterns.size(); ++i) {
            if (i) pats += "; ";
            pats += render_pattern(h.patterns[i]);
        }
        t.rows.push_back({std::to_string(h.n), h.value.get_str(), std::to_string(h.base), render_digits(h.digits), pats});
    }
    return t;
}

namespace {

Table empty_step_table() {
    return Table{{"step", "rho", "convergent_index", "q", "epsilon_lower", "bound", "w_max", "cases_evaluated",
                  "duplicates_skipped", "worst_case", "status"},
                 {},
                 {true, true, true, false, false, true, true, true, true, false, false}};
}

} // namespace

Table step_table(const std::vector<StepReport>& steps) {
    Table t = empty_step_table();
    for (const auto& s : steps) {
        t.rows.push_back({std::to_string(s.step), std::to_string(s.rho), std::to_string(s.worst.convergent_index),
                          s.worst.q.get_str(), format_double(s.epsilon_min),
                          std::to_string(s.bound), std::to_string(s.w_max), std::to_string(s.cases_evaluated),
                          std::to_string(s.duplicates_skipped), s.worst_case.to_string(),
                          step_variable(s.step) + " <= " + std::to_string(s.bound)});
    }
    return t;
}

Table step_failure_row(int step, unsigned rho, const std::string& message) {
    Table t = empty_step_table();
    t.rows.push_back({std::to_string(step), std::to_string(rho), "", "", "", "", "", "", "", "", "failed: " + message});
    return t;
}

Table bound_table(const InitialBoundReport& rep) {
    Table t{{"quantity", "value"}, {}, {false, false}};
    for (const auto& a : rep.audit) t.rows.push_back({a.name, a.value});
    return t;
}

void append_rows(Table& a, const Table& b) {
    if (a.columns != b.columns) throw Error("append_rows: column mismatch");
    a.rows.insert(a.rows.end(), b.rows.begin(), b.rows.end());
}

} // namespace narep
