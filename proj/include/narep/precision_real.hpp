#pragma once

#include <string>
#include <utility>

#include <mpfr.h>

#include "narep/bigint.hpp"

namespace narep {

namespace detail {

// Owning handle for an mpfr_t. A moved-from handle holds no limbs.
class Mpfr {
  public:
    explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    Mpfr(const Mpfr& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& other) noexcept {
        v_[0] = other.v_[0];
        other.v_[0]._mpfr_d = nullptr;
    }
    Mpfr& operator=(const Mpfr& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& other) noexcept {
        std::swap(v_[0], other.v_[0]);
        return *this;
    }
    ~Mpfr() {
        if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

} // namespace detail

/// A real number carried as a closed interval [lo, hi] whose endpoints are
/// MPFR floating-point values of a fixed precision. Every operation rounds
/// outward, so the true value is always enclosed. precision_bits() is the
/// endpoint precision; the width reflects how much of it is actually certified.
class PrecisionReal {
  public:
    explicit PrecisionReal(long bits = 64);

    static PrecisionReal from_long(long v, long bits);
    static PrecisionReal from_integer(const BigInt& v, long bits);
    static PrecisionReal from_ratio(const BigInt& num, const BigInt& den, long bits);
    /// Encloses a decimal literal such as "2.75e41".
    static PrecisionReal from_decimal(const std::string& text, long bits);
    static PrecisionReal from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, long bits);
    static PrecisionReal hull(const PrecisionReal& a, const PrecisionReal& b);

    long precision_bits() const { return bits_; }
    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }

    double lower() const; // rounded toward -inf
    double upper() const; // rounded toward +inf
    double midpoint() const;
    double width() const; // rounded toward +inf

    bool is_point() const { return mpfr_equal_p(lo(), hi()) != 0; }
    bool certainly_positive() const { return mpfr_sgn(lo()) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi()) < 0; }
    bool contains_zero() const { return mpfr_sgn(lo()) <= 0 && mpfr_sgn(hi()) >= 0; }
    bool contains(double v) const;
    bool contains(const PrecisionReal& inner) const;

    /// Re-rounds both endpoints outward to `bits`.
    PrecisionReal at_precision(long bits) const;
    /// The midpoint as a point interval at one extra bit (exact).
    PrecisionReal midpoint_real() const;

    /// Midpoint in scientific notation with `digits` significant digits.
    std::string to_string(int digits = 20) const;
    std::string lower_string(int digits = 20) const;
    std::string upper_string(int digits = 20) const;

    PrecisionReal& operator+=(const PrecisionReal& rhs);
    PrecisionReal& operator-=(const PrecisionReal& rhs);
    PrecisionReal& operator*=(const PrecisionReal& rhs);
    PrecisionReal& operator/=(const PrecisionReal& rhs);

    friend PrecisionReal operator+(PrecisionReal a, const PrecisionReal& b) { return a += b; }
    friend PrecisionReal operator-(PrecisionReal a, const PrecisionReal& b) { return a -= b; }
    friend PrecisionReal operator*(PrecisionReal a, const PrecisionReal& b) { return a *= b; }
    friend PrecisionReal operator/(PrecisionReal a, const PrecisionReal& b) { return a /= b; }
    PrecisionReal operator-() const;

    PrecisionReal mul(long k) const;
    PrecisionReal mul(const BigInt& k) const;
    PrecisionReal div(long k) const;
    PrecisionReal add(long k) const;

  private:
    PrecisionReal(detail::Mpfr lo, detail::Mpfr hi, long bits)
        : lo_(std::move(lo)), hi_(std::move(hi)), bits_(bits) {}

    detail::Mpfr lo_;
    detail::Mpfr hi_;
    long bits_;

    friend PrecisionReal log(const PrecisionReal& x);
    friend PrecisionReal log1p(const PrecisionReal& x);
    friend PrecisionReal exp(const PrecisionReal& x);
    friend PrecisionReal sqrt(const PrecisionReal& x);
    friend PrecisionReal abs(const PrecisionReal& x);
    friend PrecisionReal pow(const PrecisionReal& x, unsigned long k);
    friend PrecisionReal nearest_int_distance(const PrecisionReal& x);
};

PrecisionReal log(const PrecisionReal& x);   // requires x > 0
PrecisionReal log1p(const PrecisionReal& x); // requires x > -1
PrecisionReal exp(const PrecisionReal& x);
PrecisionReal sqrt(const PrecisionReal& x);  // requires x >= 0
PrecisionReal abs(const PrecisionReal& x);
PrecisionReal pow(const PrecisionReal& x, unsigned long k);

/// min over integers n of |x - n|, enclosed. The result lies in [0, 1/2];
/// a half-integer yields exactly 1/2.
PrecisionReal nearest_int_distance(const PrecisionReal& x);

/// a < b holds for every pair of enclosed values.
inline bool certainly_less(const PrecisionReal& a, const PrecisionReal& b) {
    return mpfr_less_p(a.hi(), b.lo()) != 0;
}

/// Largest integer <= every enclosed value / smallest integer >= every enclosed value.
BigInt floor_lower(const PrecisionReal& x);
BigInt ceil_upper(const PrecisionReal& x);
/// floor of the upper endpoint: an integer majorant of floor(x).
BigInt floor_upper(const PrecisionReal& x);

} // namespace narep
