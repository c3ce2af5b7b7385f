#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "narep/bigint.hpp"
#include "narep/dp_reduction.hpp"
#include "narep/report.hpp"

namespace narep {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitMismatch = 2,
    kExitReductionFailed = 3,
};

inline constexpr const char* kPrecisionEnv = "NAREP_PRECISION";

struct RunConfig {
    unsigned base_min = 2;
    unsigned base_max = 10;
    std::int64_t n_max = 600;
    long precision_bits = 1024;
    BigInt M = default_big_m();
    bool enforce_ordering = false;
    OutputFormat output_format = OutputFormat::Table;
    unsigned parallel_workers = 1;
    bool strict_paper = false;

    /// Throws ConfigError unless 2 <= base_min <= base_max <= 64, n_max >= 4,
    /// precision_bits >= 256, M >= 1 and workers >= 1.
    void validate() const;
    ReductionOptions reduction_options() const;
};

/// Default precision: NAREP_PRECISION if set and numeric, else 1024.
long default_precision();

int cmd_seq(std::int64_t from, std::int64_t to, const RunConfig& cfg, std::ostream& out);
int cmd_search(const RunConfig& cfg, std::ostream& out);
int cmd_bound(unsigned rho, const RunConfig& cfg, std::ostream& out);

/// step is "1", "2", "3" or "all". Later steps take their ranges from the
/// earlier ones unless ell_max / m_max are given (> 0).
int cmd_reduce(unsigned rho, const std::string& step, long ell_max, long m_max, const RunConfig& cfg,
               std::ostream& out);

/// Reduces every base in range, searches up to max(n_max, reduced n bound) and
/// compares with the embedded solution list. The list describes bases 2..10,
/// so other base ranges are rejected.
int cmd_verify(const RunConfig& cfg, std::ostream& out);

} // namespace narep
