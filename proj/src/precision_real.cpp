#include "narep/precision_real.hpp"

#include <algorithm>

#include "narep/errors.hpp"

namespace narep {

namespace {

using detail::Mpfr;

std::string format_endpoint(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
    char* raw = nullptr;
    const char* fmt = rnd == MPFR_RNDD ? "%.*RDe" : rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe";
    if (mpfr_asprintf(&raw, fmt, std::max(digits - 1, 0), v) < 0) return "?";
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
}

long join_bits(const PrecisionReal& a, const PrecisionReal& b) {
    return std::max(a.precision_bits(), b.precision_bits());
}

} // namespace

PrecisionReal::PrecisionReal(long bits) : lo_(bits), hi_(bits), bits_(bits) {}

PrecisionReal PrecisionReal::from_long(long v, long bits) {
    PrecisionReal r(bits);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

PrecisionReal PrecisionReal::from_integer(const BigInt& v, long bits) {
    PrecisionReal r(bits);
    mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
    return r;
}

PrecisionReal PrecisionReal::from_ratio(const BigInt& num, const BigInt& den, long bits) {
    if (den == 0) throw Error("PrecisionReal::from_ratio: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    PrecisionReal r(bits);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

PrecisionReal PrecisionReal::from_decimal(const std::string& text, long bits) {
    PrecisionReal r(bits);
    if (mpfr_set_str(r.lo_.get(), text.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi_.get(), text.c_str(), 10, MPFR_RNDU) != 0) {
        throw Error("PrecisionReal::from_decimal: cannot parse '" + text + "'");
    }
    return r;
}

PrecisionReal PrecisionReal::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, long bits) {
    if (mpfr_greater_p(lo, hi)) throw Error("PrecisionReal::from_endpoints: lo > hi");
    PrecisionReal r(bits);
    mpfr_set(r.lo_.get(), lo, MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi, MPFR_RNDU);
    return r;
}

PrecisionReal PrecisionReal::hull(const PrecisionReal& a, const PrecisionReal& b) {
    PrecisionReal r(join_bits(a, b));
    mpfr_min(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

double PrecisionReal::lower() const { return mpfr_get_d(lo(), MPFR_RNDD); }
double PrecisionReal::upper() const { return mpfr_get_d(hi(), MPFR_RNDU); }

double PrecisionReal::midpoint() const { return midpoint_real().upper(); }

double PrecisionReal::width() const {
    Mpfr w(bits_ + 1);
    mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool PrecisionReal::contains(double v) const {
    return mpfr_cmp_d(lo(), v) <= 0 && mpfr_cmp_d(hi(), v) >= 0;
}

bool PrecisionReal::contains(const PrecisionReal& inner) const {
    return mpfr_lessequal_p(lo(), inner.lo()) && mpfr_greaterequal_p(hi(), inner.hi());
}

PrecisionReal PrecisionReal::at_precision(long bits) const { return from_endpoints(lo(), hi(), bits); }

PrecisionReal PrecisionReal::midpoint_real() const {
    PrecisionReal r(bits_ + 1);
    // With one extra bit the sum of two same-precision values halves exactly
    // unless the exponents differ widely; round outward to stay enclosing.
    mpfr_add(r.lo_.get(), lo(), hi(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), lo(), hi(), MPFR_RNDU);
    mpfr_div_2ui(r.lo_.get(), r.lo_.get(), 1, MPFR_RNDD);
    mpfr_div_2ui(r.hi_.get(), r.hi_.get(), 1, MPFR_RNDU);
    return r;
}

std::string PrecisionReal::to_string(int digits) const {
    const PrecisionReal mid = midpoint_real();
    return format_endpoint(mid.lo(), digits, MPFR_RNDN);
}

std::string PrecisionReal::lower_string(int digits) const { return format_endpoint(lo(), digits, MPFR_RNDD); }
std::string PrecisionReal::upper_string(int digits) const { return format_endpoint(hi(), digits, MPFR_RNDU); }

PrecisionReal& PrecisionReal::operator+=(const PrecisionReal& rhs) {
    const long bits = join_bits(*this, rhs);
    if (bits != bits_) *this = at_precision(bits);
    mpfr_add(lo_.get(), lo_.get(), rhs.lo(), MPFR_RNDD);
    mpfr_add(hi_.get(), hi_.get(), rhs.hi(), MPFR_RNDU);
    return *this;
}

PrecisionReal& PrecisionReal::operator-=(const PrecisionReal& rhs) {
    const long bits = join_bits(*this, rhs);
    if (bits != bits_) *this = at_precision(bits);
    mpfr_sub(lo_.get(), lo_.get(), rhs.hi(), MPFR_RNDD);
    mpfr_sub(hi_.get(), hi_.get(), rhs.lo(), MPFR_RNDU);
    return *this;
}

PrecisionReal& PrecisionReal::operator*=(const PrecisionReal& rhs) {
    const long bits = join_bits(*this, rhs);
    if (mpfr_sgn(lo()) >= 0 && mpfr_sgn(rhs.lo()) >= 0) {
        if (bits != bits_) *this = at_precision(bits);
        mpfr_mul(lo_.get(), lo_.get(), rhs.lo(), MPFR_RNDD);
        mpfr_mul(hi_.get(), hi_.get(), rhs.hi(), MPFR_RNDU);
        return *this;
    }
    Mpfr lo_acc(bits), hi_acc(bits), t(bits);
    bool first = true;
    for (mpfr_srcptr a : {lo(), hi()}) {
        for (mpfr_srcptr b : {rhs.lo(), rhs.hi()}) {
            mpfr_mul(t.get(), a, b, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), lo_acc.get())) mpfr_set(lo_acc.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), a, b, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), hi_acc.get())) mpfr_set(hi_acc.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    *this = PrecisionReal(std::move(lo_acc), std::move(hi_acc), bits);
    return *this;
}

PrecisionReal& PrecisionReal::operator/=(const PrecisionReal& rhs) {
    if (rhs.contains_zero()) throw Error("PrecisionReal: division by an interval containing zero");
    const long bits = join_bits(*this, rhs);
    if (mpfr_sgn(lo()) >= 0 && mpfr_sgn(rhs.lo()) > 0) {
        if (bits != bits_) *this = at_precision(bits);
        mpfr_div(lo_.get(), lo_.get(), rhs.hi(), MPFR_RNDD);
        mpfr_div(hi_.get(), hi_.get(), rhs.lo(), MPFR_RNDU);
        return *this;
    }
    Mpfr lo_acc(bits), hi_acc(bits), t(bits);
    bool first = true;
    for (mpfr_srcptr a : {lo(), hi()}) {
        for (mpfr_srcptr b : {rhs.lo(), rhs.hi()}) {
            mpfr_div(t.get(), a, b, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), lo_acc.get())) mpfr_set(lo_acc.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), a, b, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), hi_acc.get())) mpfr_set(hi_acc.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    *this = PrecisionReal(std::move(lo_acc), std::move(hi_acc), bits);
    return *this;
}

PrecisionReal PrecisionReal::operator-() const {
    PrecisionReal r(bits_);
    mpfr_neg(r.lo_.get(), hi(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo(), MPFR_RNDU);
    return r;
}

PrecisionReal PrecisionReal::mul(long k) const { return *this * from_long(k, bits_); }

PrecisionReal PrecisionReal::mul(const BigInt& k) const {
    PrecisionReal r(bits_);
    if (k >= 0) {
        mpfr_mul_z(r.lo_.get(), lo(), k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_.get(), hi(), k.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(r.lo_.get(), hi(), k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_.get(), lo(), k.get_mpz_t(), MPFR_RNDU);
    }
    return r;
}

PrecisionReal PrecisionReal::div(long k) const { return *this / from_long(k, bits_); }
PrecisionReal PrecisionReal::add(long k) const { return *this + from_long(k, bits_); }

PrecisionReal log(const PrecisionReal& x) {
    if (!x.certainly_positive()) throw Error("log: argument not certainly positive");
    PrecisionReal r(x.bits_);
    mpfr_log(r.lo_.get(), x.lo(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), x.hi(), MPFR_RNDU);
    return r;
}

PrecisionReal log1p(const PrecisionReal& x) {
    if (mpfr_cmp_si(x.lo(), -1) <= 0) throw Error("log1p: argument not certainly above -1");
    PrecisionReal r(x.bits_);
    mpfr_log1p(r.lo_.get(), x.lo(), MPFR_RNDD);
    mpfr_log1p(r.hi_.get(), x.hi(), MPFR_RNDU);
    return r;
}

PrecisionReal exp(const PrecisionReal& x) {
    PrecisionReal r(x.bits_);
    mpfr_exp(r.lo_.get(), x.lo(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), x.hi(), MPFR_RNDU);
    return r;
}

PrecisionReal sqrt(const PrecisionReal& x) {
    if (mpfr_sgn(x.lo()) < 0) throw Error("sqrt: argument may be negative");
    PrecisionReal r(x.bits_);
    mpfr_sqrt(r.lo_.get(), x.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), x.hi(), MPFR_RNDU);
    return r;
}

PrecisionReal abs(const PrecisionReal& x) {
    if (mpfr_sgn(x.lo()) >= 0) return x;
    if (mpfr_sgn(x.hi()) <= 0) return -x;
    PrecisionReal r(x.bits_);
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_neg(r.hi_.get(), x.lo(), MPFR_RNDU);
    if (mpfr_greater_p(x.hi(), r.hi())) mpfr_set(r.hi_.get(), x.hi(), MPFR_RNDU);
    return r;
}

PrecisionReal pow(const PrecisionReal& x, unsigned long k) {
    PrecisionReal result = PrecisionReal::from_long(1, x.bits_);
    PrecisionReal base = x;
    while (k != 0) {
        if (k & 1UL) result *= base;
        k >>= 1;
        if (k != 0) base *= base;
    }
    return result;
}

PrecisionReal nearest_int_distance(const PrecisionReal& x) {
    const long bits = x.bits_;
    PrecisionReal r(bits);
    Mpfr span(bits + 1);
    mpfr_sub(span.get(), x.hi(), x.lo(), MPFR_RNDU);
    if (mpfr_cmp_ui(span.get(), 1) >= 0) {
        mpfr_set_zero(r.lo_.get(), 1);
        mpfr_set_d(r.hi_.get(), 0.5, MPFR_RNDU);
        return r;
    }

    // d(t) = |t - round(t)| is piecewise linear with minima at integers and
    // maxima at half-integers; evaluate it at both endpoints, then account
    // for any such critical point strictly inside.
    auto dist_at = [bits](mpfr_srcptr t, mpfr_rnd_t rnd, Mpfr& out) {
        Mpfr n(std::max<long>(bits, mpfr_get_prec(t)));
        mpfr_rint(n.get(), t, MPFR_RNDN);
        if (mpfr_cmp(t, n.get()) >= 0) {
            mpfr_sub(out.get(), t, n.get(), rnd);
        } else {
            mpfr_sub(out.get(), n.get(), t, rnd);
        }
    };

    Mpfr d_lo_lo(bits), d_lo_hi(bits), d_hi_lo(bits), d_hi_hi(bits);
    dist_at(x.lo(), MPFR_RNDD, d_lo_lo);
    dist_at(x.lo(), MPFR_RNDU, d_lo_hi);
    dist_at(x.hi(), MPFR_RNDD, d_hi_lo);
    dist_at(x.hi(), MPFR_RNDU, d_hi_hi);

    mpfr_min(r.lo_.get(), d_lo_lo.get(), d_hi_lo.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), d_lo_hi.get(), d_hi_hi.get(), MPFR_RNDU);

    // Interior integer: floor(hi) > floor(lo) or lo is an integer itself.
    Mpfr fl(std::max<long>(bits, mpfr_get_prec(x.lo()))), fh(std::max<long>(bits, mpfr_get_prec(x.hi())));
    mpfr_floor(fl.get(), x.lo());
    mpfr_floor(fh.get(), x.hi());
    if (!mpfr_equal_p(fl.get(), fh.get()) || mpfr_integer_p(x.lo())) {
        mpfr_set_zero(r.lo_.get(), 1);
    }
    // Interior half-integer: floor(t + 1/2) changes across the interval.
    Mpfr sl(bits + 2), sh(bits + 2);
    mpfr_set_d(sl.get(), 0.5, MPFR_RNDN);
    mpfr_add(sl.get(), sl.get(), x.lo(), MPFR_RNDD);
    mpfr_set_d(sh.get(), 0.5, MPFR_RNDN);
    mpfr_add(sh.get(), sh.get(), x.hi(), MPFR_RNDU);
    mpfr_floor(sl.get(), sl.get());
    mpfr_floor(sh.get(), sh.get());
    if (!mpfr_equal_p(sl.get(), sh.get())) {
        mpfr_set_d(r.hi_.get(), 0.5, MPFR_RNDU);
    }
    if (mpfr_cmp_d(r.hi(), 0.5) > 0) mpfr_set_d(r.hi_.get(), 0.5, MPFR_RNDU);
    if (mpfr_sgn(r.lo()) < 0) mpfr_set_zero(r.lo_.get(), 1);
    return r;
}

BigInt floor_lower(const PrecisionReal& x) {
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), x.lo(), MPFR_RNDD);
    return out;
}

BigInt ceil_upper(const PrecisionReal& x) {
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), x.hi(), MPFR_RNDU);
    return out;
}

BigInt floor_upper(const PrecisionReal& x) {
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), x.hi(), MPFR_RNDD);
    return out;
}

} // namespace narep
