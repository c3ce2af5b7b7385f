#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "narep/bigint.hpp"
#include "narep/errors.hpp"
#include "narep/hp_arith.hpp"
#include "narep/precision_real.hpp"

namespace narep {

/// Evaluates a real constant as an enclosure at the requested precision.
using RealFn = std::function<PrecisionReal(long bits)>;

/// Which sweep a case came from and its digit/length parameters. Fields that
/// the step does not use are zero.
struct CaseLabel {
    int step = 0;
    unsigned rho = 0;
    unsigned d1 = 0;
    unsigned d2 = 0;
    unsigned d3 = 0;
    long ell = 0;
    long m = 0;

    std::string to_string() const;
};

/// One instance of |u tau - v + mu| < A B^(-w) with u < M.
struct ReductionCase {
    RealFn tau;
    RealFn mu;
    RealFn A;
    RealFn B;
    BigInt M;
    CaseLabel label;
};

struct ReductionOutcome {
    std::size_t convergent_index = 0; // 1-based
    BigInt q;
    PrecisionReal epsilon;
    long w_max = 0;
    bool certified = false;
};

/// epsilon must exceed this lower bound to count as positive.
inline constexpr double kEpsilonFloor = 1e-12;

inline const BigInt& default_big_m() {
    static const BigInt m = BigInt(2) * pow_ui(10, 51);
    return m;
}

struct ReductionOptions {
    long precision = 1024;
    BigInt M = default_big_m();
    unsigned workers = 1;
    bool strict_paper = false; // d2, d3 range over 1..rho-1 instead of 0..rho-1
    int max_extra_convergents = 20;
};

/// tau = log rho / log alpha.
RealFn tau_fn(unsigned rho);

/// The argument V of the step's logarithm: d1, d1 rho^ell - (d1 - d2), or
/// d1 rho^(ell+m) - (d1 - d2) rho^m - (d2 - d3).
BigInt linear_form_argument(const CaseLabel& label);

/// The case of `label` with mu = log(V / ((rho - 1) a)) / log alpha,
/// A = 6, 4, 10 over log alpha and B = rho.
ReductionCase make_linear_form_case(const CaseLabel& label, const BigInt& M);

/// Continued fraction of tau, long enough to hold the first convergent with
/// q > 6M and `extra` more.
ContinuedFraction tau_expansion(const RealFn& tau, const BigInt& M, int extra, long precision);

/// Starts at the least convergent with q > 6M and advances until
/// eps = ||mu q|| - M ||tau q|| is certified above kEpsilonFloor at the working
/// precision and at twice that precision, the two agreeing to 20 bits.
/// Throws EpsilonNeverPositive after max_extra_convergents further attempts.
ReductionOutcome reduce_case(const ReductionCase& c, const ContinuedFraction& tau_cf,
                             int max_extra_convergents = 20, long precision = 1024);
ReductionOutcome reduce_case(const ReductionCase& c, int max_extra_convergents = 20,
                             long precision = 1024);

struct StepReport {
    int step = 0;
    unsigned rho = 0;
    std::size_t cases_total = 0;
    std::size_t cases_evaluated = 0; // distinct V values
    std::size_t duplicates_skipped = 0;
    CaseLabel worst_case;
    ReductionOutcome worst;
    long w_max = 0;
    long bound = 0;     // ell, m or n bound
    double epsilon_min = 0; // lower bound for the least epsilon over all cases
    std::vector<std::size_t> convergent_indices; // 1-based, ascending
};

/// Shared per-base data: the expansion of tau and the first usable convergent.
struct TauContext {
    unsigned rho = 0;
    BigInt M;
    long precision = 0;
    ContinuedFraction cf;
    std::size_t first_position = 0; // least q > 6M, 0-based
};

TauContext make_tau_context(unsigned rho, const ReductionOptions& opt);

StepReport step1(unsigned rho, const ReductionOptions& opt, const TauContext* ctx = nullptr);
StepReport step2(unsigned rho, long ell_max, const ReductionOptions& opt, const TauContext* ctx = nullptr);
StepReport step3(unsigned rho, long ell_max, long m_max, const ReductionOptions& opt,
                 const TauContext* ctx = nullptr);

struct ReductionSummary {
    unsigned rho = 0;
    long ell_max = 0;
    long m_max = 0;
    long n_max = 0;
    std::vector<StepReport> steps;
};

ReductionSummary full_reduction(unsigned rho, const ReductionOptions& opt);

} // namespace narep
