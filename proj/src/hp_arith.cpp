#include "narep/hp_arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace narep {

namespace {

constexpr long kGuardBits = 32;

// x = m * 2^e exactly.
std::pair<BigInt, long> dyadic_parts(mpfr_srcptr x) {
    BigInt m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    return {m, static_cast<long>(e)};
}

// Exact rational value of a finite MPFR number as num/den, den > 0.
std::pair<BigInt, BigInt> dyadic_rational(mpfr_srcptr x) {
    auto [m, e] = dyadic_parts(x);
    if (e >= 0) {
        BigInt num = m;
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return {num, BigInt(1)};
    }
    BigInt den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return {m, den};
}

PrecisionReal point(mpfr_srcptr v, long bits) { return PrecisionReal::from_endpoints(v, v, bits); }

PrecisionReal poly_derivative_eval(std::span<const BigInt> poly, const PrecisionReal& x) {
    std::vector<BigInt> d;
    for (std::size_t i = 1; i < poly.size(); ++i) d.push_back(poly[i] * static_cast<unsigned long>(i));
    return poly_eval(d, x);
}

// Rational-number state for one endpoint's continued fraction.
struct RationalCf {
    BigInt num;
    BigInt den;
    bool done = false;

    // Next partial quotient, advancing the state.
    BigInt next() {
        BigInt a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        BigInt r = num - a * den;
        if (r == 0) {
            done = true;
        } else {
            num = den;
            den = r;
        }
        return a;
    }
};

void push_term(ContinuedFraction& cf, const BigInt& a) {
    const std::size_t i = cf.partial_quotients.size();
    cf.partial_quotients.push_back(a);
    if (i == 0) {
        cf.convergents.push_back({a, BigInt(1)});
    } else if (i == 1) {
        const Convergent& c0 = cf.convergents[0];
        cf.convergents.push_back({a * c0.p + 1, a * c0.q});
    } else {
        const Convergent& c1 = cf.convergents[i - 1];
        const Convergent& c2 = cf.convergents[i - 2];
        cf.convergents.push_back({a * c1.p + c2.p, a * c1.q + c2.q});
    }
}

} // namespace

int poly_sign_at(std::span<const BigInt> poly, mpfr_srcptr x) {
    if (poly.empty()) return 0;
    auto [m, e] = dyadic_parts(x);
    const std::size_t deg = poly.size() - 1;
    BigInt sum = 0;
    if (e >= 0) {
        BigInt xv = m;
        mpz_mul_2exp(xv.get_mpz_t(), xv.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        for (std::size_t i = poly.size(); i-- > 0;) sum = sum * xv + poly[i];
    } else {
        // sum_i c_i m^i 2^{-e (deg - i)}, a positive multiple of poly(x).
        const auto shift = static_cast<mp_bitcnt_t>(-e);
        BigInt mpow = 1;
        for (std::size_t i = 0; i <= deg; ++i) {
            BigInt term = poly[i] * mpow;
            mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), shift * (deg - i));
            sum += term;
            mpow *= m;
        }
    }
    return sgn(sum);
}

PrecisionReal poly_eval(std::span<const BigInt> poly, const PrecisionReal& x) {
    const long bits = x.precision_bits();
    PrecisionReal acc(bits);
    for (std::size_t i = poly.size(); i-- > 0;) {
        acc = acc * x + PrecisionReal::from_integer(poly[i], bits);
    }
    return acc;
}

RootBracket isolate_root(std::vector<BigInt> poly, const PrecisionReal& start, long bits) {
    if (bits < 2) throw std::invalid_argument("isolate_root: precision too small");
    const long work = bits + kGuardBits;
    detail::Mpfr lo(work), hi(work), mid(work);
    mpfr_set(lo.get(), start.lo(), MPFR_RNDN);
    mpfr_set(hi.get(), start.hi(), MPFR_RNDN);

    int s_lo = poly_sign_at(poly, lo.get());
    int s_hi = poly_sign_at(poly, hi.get());
    if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) {
        throw std::invalid_argument("isolate_root: start interval has no strict sign change");
    }
    if (s_lo > 0) {
        for (auto& c : poly) c = -c;
    }

    auto width_below = [&](long k) {
        detail::Mpfr w(work);
        mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
        return mpfr_sgn(w.get()) == 0 || mpfr_get_exp(w.get()) <= -k;
    };
    auto bisect_once = [&] {
        mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
        mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
        const int s = poly_sign_at(poly, mid.get());
        if (s == 0) {
            mpfr_set(lo.get(), mid.get(), MPFR_RNDN);
            mpfr_set(hi.get(), mid.get(), MPFR_RNDN);
        } else if (s < 0) {
            mpfr_set(lo.get(), mid.get(), MPFR_RNDN);
        } else {
            mpfr_set(hi.get(), mid.get(), MPFR_RNDN);
        }
    };

    while (!width_below(32)) bisect_once();

    // Interval Newton: N(X) = m - f(m) / f'(X), intersected with X.
    for (int iter = 0; iter < 64 && !width_below(bits + 16); ++iter) {
        PrecisionReal box = PrecisionReal::from_endpoints(lo.get(), hi.get(), work);
        PrecisionReal slope = poly_derivative_eval(poly, box);
        if (slope.contains_zero()) {
            bisect_once();
            continue;
        }
        PrecisionReal m = box.midpoint_real().at_precision(work);
        PrecisionReal newton = m - poly_eval(poly, m) / slope;
        detail::Mpfr nlo(work), nhi(work);
        mpfr_max(nlo.get(), lo.get(), newton.lo(), MPFR_RNDD);
        mpfr_min(nhi.get(), hi.get(), newton.hi(), MPFR_RNDU);
        if (mpfr_greater_p(nlo.get(), nhi.get())) {
            throw Error("isolate_root: interval Newton lost the root");
        }
        detail::Mpfr old_w(work), new_w(work);
        mpfr_sub(old_w.get(), hi.get(), lo.get(), MPFR_RNDU);
        mpfr_sub(new_w.get(), nhi.get(), nlo.get(), MPFR_RNDU);
        mpfr_swap(lo.get(), nlo.get());
        mpfr_swap(hi.get(), nhi.get());
        mpfr_mul_2ui(new_w.get(), new_w.get(), 1, MPFR_RNDU);
        if (mpfr_greaterequal_p(new_w.get(), old_w.get())) break; // stalled at working precision
    }

    // Round outward to the requested precision and re-certify exactly.
    detail::Mpfr out_lo(bits), out_hi(bits);
    mpfr_set(out_lo.get(), lo.get(), MPFR_RNDD);
    mpfr_set(out_hi.get(), hi.get(), MPFR_RNDU);
    if (mpfr_equal_p(out_lo.get(), out_hi.get())) {
        // The root is exactly representable; keep a proper sign-change bracket.
        mpfr_nextbelow(out_lo.get());
        mpfr_nextabove(out_hi.get());
    }
    if (poly_sign_at(poly, out_lo.get()) >= 0 || poly_sign_at(poly, out_hi.get()) <= 0) {
        throw Error("isolate_root: sign certification failed");
    }
    return RootBracket{point(out_lo.get(), bits), point(out_hi.get(), bits), std::move(poly)};
}

RootBracket real_root_alpha(long bits) {
    if (bits < 2) throw std::invalid_argument("real_root_alpha: precision too small");
    std::vector<BigInt> poly{BigInt(-1), BigInt(0), BigInt(-1), BigInt(1)};
    PrecisionReal start = PrecisionReal::hull(PrecisionReal::from_long(1, bits), PrecisionReal::from_long(2, bits));
    return isolate_root(std::move(poly), start, bits);
}

PrecisionReal alpha(long bits) { return real_root_alpha(bits).enclosure(); }

PrecisionReal log_alpha(long bits) {
    return log(alpha(bits + kGuardBits)).at_precision(bits);
}

PrecisionReal binet_coefficient_a(long bits) {
    const long work = bits + kGuardBits;
    const PrecisionReal x = alpha(work);
    const PrecisionReal x2 = x * x;
    const PrecisionReal a = x2 / (x2 * x).add(2);
    return a.at_precision(bits);
}

ContinuedFraction cf_certified_prefix(const PrecisionReal& x, std::size_t max_terms) {
    ContinuedFraction cf;
    auto [ln, ld] = dyadic_rational(x.lo());
    RationalCf lo{ln, ld};
    if (x.is_point()) {
        while (cf.size() < max_terms && !lo.done) push_term(cf, lo.next());
        cf.terminated = lo.done;
        cf.precision_exhausted = false;
        return cf;
    }
    auto [hn, hd] = dyadic_rational(x.hi());
    RationalCf hi{hn, hd};
    while (cf.size() < max_terms) {
        if (lo.done || hi.done) break;
        BigInt a = lo.next();
        BigInt b = hi.next();
        if (a != b) break;
        push_term(cf, a);
    }
    cf.precision_exhausted = cf.size() < max_terms;
    return cf;
}

ContinuedFraction cf_expand(const PrecisionReal& x, std::size_t max_terms) {
    if (!x.certainly_positive()) throw std::invalid_argument("cf_expand: x must be positive");
    ContinuedFraction cf = cf_certified_prefix(x, max_terms);
    if (cf.precision_exhausted) {
        const std::size_t got = cf.size();
        throw CfPrecisionExhausted("cf_expand: only " + std::to_string(got) + " of " +
                                       std::to_string(max_terms) + " partial quotients certified at " +
                                       std::to_string(x.precision_bits()) + " bits",
                                   std::move(cf));
    }
    return cf;
}

ContinuedFraction cf_expand_escalating(const std::function<PrecisionReal(long)>& make,
                                       std::size_t max_terms, long start_bits, long max_bits) {
    for (long bits = start_bits;; bits *= 2) {
        try {
            return cf_expand(make(bits), max_terms);
        } catch (const CfPrecisionExhausted&) {
            if (bits * 2 > max_bits) throw;
        }
    }
}

ConvergentHit convergent_exceeding(const ContinuedFraction& cf, const BigInt& threshold) {
    for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
        if (cf.convergents[i].q > threshold) return {i, i + 1, cf.convergents[i]};
    }
    throw NotReached("convergent_exceeding: no stored convergent has q > " + threshold.get_str());
}

} // namespace narep
