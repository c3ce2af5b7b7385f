#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "narep/baker_bounds.hpp"
#include "narep/bigint.hpp"
#include "narep/dp_reduction.hpp"
#include "narep/repdigit.hpp"

namespace narep {

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_format(std::string_view name); // throws ConfigError
const char* format_name(OutputFormat f);

/// Plain rows of strings; rendered as aligned columns, CSV or JSON objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<bool> numeric; // JSON: emit the column unquoted

    void write(std::ostream& os, OutputFormat f) const;
};

/// "d1^ell d2^m d3^k", e.g. "3^3 2^2 0^2".
std::string render_pattern(const ConcatPattern& p);

Table sequence_table(std::int64_t from, const std::vector<BigInt>& values);
Table search_table(const std::vector<SearchHit>& hits);
/// Columns step, rho, convergent_index, q, epsilon_lower, bound, then
/// w_max, cases_evaluated, duplicates_skipped, worst_case, status.
Table step_table(const std::vector<StepReport>& steps);
Table step_failure_row(int step, unsigned rho, const std::string& message);
Table bound_table(const InitialBoundReport& rep);

/// Appends the rows of b to a; the column sets must match.
void append_rows(Table& a, const Table& b);

/// epsilon lower bounds and similar doubles, printed reproducibly.
std::string format_double(double v, int digits = 6);

} // namespace narep
