#pragma once

#include <string>
#include <utility>
#include <vector>

#include "narep/bigint.hpp"
#include "narep/errors.hpp"
#include "narep/precision_real.hpp"

namespace narep {

inline constexpr long kBoundPrecision = 128;

/// Parameters of Matveev's lower bound for
/// |eta_1^b_1 ... eta_s^b_s - 1| in a real field of degree `degree`.
struct MatveevInstance {
    int s = 1;
    int degree = 1;
    PrecisionReal B;              // >= 3 and >= max |b_i|
    std::vector<PrecisionReal> A; // A_i >= max(degree h(eta_i), |log eta_i|, 0.16)
};

/// -1.4 * 30^(s+3) * s^4.5 * d^2 * (1 + log d) * (1 + log B) * A_1 ... A_s,
/// a lower bound for log |Lambda|. Throws InvalidInstance.
PrecisionReal matveev_lower_bound(const MatveevInstance& inst);

/// The three linear forms obtained by peeling the repdigit blocks off
/// N_n = a alpha^n + (small) one at a time:
///   Lambda1: eta_1 = (rho-1) a / d1
///   Lambda2: eta_1 = (rho-1) a / (d1 rho^ell - (d1-d2))
///   Lambda3: eta_1 = (d1 rho^(ell+m) - (d1-d2) rho^m - (d2-d3)) / ((rho-1) a)
/// with eta_2 = alpha, eta_3 = rho in every case.
enum class LinearForm { Lambda1 = 1, Lambda2 = 2, Lambda3 = 3 };

struct LinearFormSpec {
    LinearForm which;
    unsigned rho;
};

/// Closed-form majorant of h(eta_1): 4 log rho, 3.75e13 log^2 rho (1 + log n),
/// 1.4e27 log^3 rho (1 + log n)^2 respectively.
PrecisionReal eta1_height_majorant(const LinearFormSpec& form, const PrecisionReal& n, long bits = kBoundPrecision);

/// A_1 = 12 log rho, 1.125e14 log^2 rho (1+log n), 4.2e27 log^3 rho (1+log n)^2;
/// A_2 = log alpha; A_3 = 3 log rho. s = 3, degree 3, B = n.
MatveevInstance matveev_instance(const LinearFormSpec& form, const PrecisionReal& n, long bits = kBoundPrecision);

/// |matveev_lower_bound| divided by log^(p) rho (1 + log n)^(q), which is
/// independent of rho and n: p, q = (2,1), (3,2), (4,3).
PrecisionReal form_coefficient(LinearForm which, long bits = kBoundPrecision);
/// The rounded constants the chain carries forward: 3.73e13, 3.49e26, 1.31e40.
PrecisionReal form_coefficient_ceiling(LinearForm which, long bits = kBoundPrecision);

struct DigitCountBracket {
    long s_min;
    long s_max;
};

/// Bracket for the total digit count S = ell + m + k of a solution with index n:
/// (S - 1) log rho + log alpha <= n log alpha < S log rho + 1.
DigitCountBracket lemma2_digit_bounds(long n, unsigned rho);

/// Upper bounds for ell and m: 3.74e13 log rho (1 + log n) and
/// 3.5e26 log^2 rho (1 + log n)^2.
PrecisionReal ell_bound(unsigned rho, const BigInt& n, long bits = kBoundPrecision);
PrecisionReal m_bound(unsigned rho, const BigInt& n, long bits = kBoundPrecision);

/// If H > (4 r^2)^r and L / (log L)^r < H then L < 2^r H (log H)^r; returns
/// that bound. Throws HypothesisViolated when H <= (4 r^2)^r.
PrecisionReal resolve_recursive_bound(int r, const PrecisionReal& H);

struct AuditEntry {
    std::string name;
    std::string value;
};

struct InitialBoundReport {
    unsigned rho;
    PrecisionReal H;
    PrecisionReal lemma3_bound;
    PrecisionReal cap;          // 5.6e48 log^7 rho
    PrecisionReal capped_bound; // min(lemma3_bound, cap)
    PrecisionReal log_check_lhs; // 95.42 + 4 log log rho
    PrecisionReal log_check_rhs; // 136 log rho
    bool log_check_passed;
    std::vector<AuditEntry> audit;
};

InitialBoundReport initial_n_bound(unsigned rho, long bits = kBoundPrecision);

} // namespace narep
