#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "narep/bigint.hpp"
#include "narep/errors.hpp"
#include "narep/precision_real.hpp"

namespace narep {

/// Certified enclosure of a simple real root. lo and hi are exact dyadic
/// point values; the stored polynomial (constant coefficient first) is
/// oriented so that poly(lo) < 0 < poly(hi), checked in exact arithmetic.
struct RootBracket {
    PrecisionReal lo;
    PrecisionReal hi;
    std::vector<BigInt> poly;

    PrecisionReal enclosure() const { return PrecisionReal::hull(lo, hi); }
    long precision_bits() const { return lo.precision_bits(); }
};

/// Exact sign of poly(x) at the dyadic rational held by x.
int poly_sign_at(std::span<const BigInt> poly, mpfr_srcptr x);

/// Interval Horner evaluation of poly over x.
PrecisionReal poly_eval(std::span<const BigInt> poly, const PrecisionReal& x);

/// Isolates the root of `poly` inside [start.lo, start.hi], where the
/// endpoints must carry opposite exact signs. Bisection narrows the bracket to
/// 32 bits, interval Newton finishes to `bits`.
RootBracket isolate_root(std::vector<BigInt> poly, const PrecisionReal& start, long bits);

/// The real root alpha ~ 1.46557 of x^3 - x^2 - 1.
RootBracket real_root_alpha(long bits);
PrecisionReal alpha(long bits);
PrecisionReal log_alpha(long bits);

/// a = alpha^2 / (alpha^3 + 2), the coefficient of alpha^n in the closed form
/// of the Narayana numbers. Its minimal polynomial is 31x^3 - 3x - 1.
PrecisionReal binet_coefficient_a(long bits);

struct Convergent {
    BigInt p;
    BigInt q;
};

/// Partial quotients a_0, a_1, ... and convergents p_i/q_i (0-based: the
/// i-th convergent uses a_0..a_i, q_0 = 1).
struct ContinuedFraction {
    std::vector<BigInt> partial_quotients;
    std::vector<Convergent> convergents;
    bool terminated = false;          // the input was an exact rational and is fully expanded
    bool precision_exhausted = false; // fewer certified terms than requested

    std::size_t size() const { return partial_quotients.size(); }
};

class CfPrecisionExhausted : public PrecisionExhausted {
  public:
    CfPrecisionExhausted(const std::string& what, ContinuedFraction partial)
        : PrecisionExhausted(what), partial_(std::move(partial)) {}
    const ContinuedFraction& partial() const { return partial_; }

  private:
    ContinuedFraction partial_;
};

/// Emits only the partial quotients on which the expansions of both interval
/// endpoints agree; sets precision_exhausted if that stops short of max_terms.
ContinuedFraction cf_certified_prefix(const PrecisionReal& x, std::size_t max_terms);

/// As cf_certified_prefix, but throws CfPrecisionExhausted instead of
/// returning a short expansion. Requires x > 0.
ContinuedFraction cf_expand(const PrecisionReal& x, std::size_t max_terms);

/// Re-evaluates `make` at doubling precision until max_terms terms certify.
ContinuedFraction cf_expand_escalating(const std::function<PrecisionReal(long)>& make,
                                       std::size_t max_terms, long start_bits = 1024,
                                       long max_bits = 1L << 16);

struct ConvergentHit {
    std::size_t position; // 0-based slot in ContinuedFraction::convergents
    std::size_t index;    // 1-based label, position + 1 (the q_k labels of published tables)
    Convergent convergent;
};

/// Least convergent with q > threshold. Throws NotReached if none is stored.
ConvergentHit convergent_exceeding(const ContinuedFraction& cf, const BigInt& threshold);

} // namespace narep
