#include "narep/narayana_seq.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

#include "narep/hp_arith.hpp"

namespace narep {

namespace {

void check_index(std::int64_t n, std::int64_t max_index) {
    if (n > max_index || n < -max_index) {
        throw IndexOutOfRange("narayana: index " + std::to_string(n) + " outside [-" +
                              std::to_string(max_index) + ", " + std::to_string(max_index) + "]");
    }
}

} // namespace

BigInt narayana(std::int64_t n, std::int64_t max_index) {
    check_index(n, max_index);
    // (x, y, z) = (N_k, N_{k+1}, N_{k+2}), starting at k = 0.
    BigInt x = 0, y = 1, z = 1;
    if (n >= 0) {
        for (std::int64_t k = 0; k < n; ++k) {
            BigInt next = z + x; // N_{k+3}
            x = std::move(y);
            y = std::move(z);
            z = std::move(next);
        }
        return x;
    }
    for (std::int64_t k = 0; k > n; --k) {
        BigInt prev = z - y; // N_{k-1} = N_{k+2} - N_{k+1}
        z = std::move(y);
        y = std::move(x);
        x = std::move(prev);
    }
    return x;
}

std::vector<BigInt> narayana_range(std::int64_t from, std::int64_t to, std::int64_t max_index) {
    if (from > to) throw std::invalid_argument("narayana_range: from > to");
    check_index(from, max_index);
    check_index(to, max_index);
    std::vector<BigInt> out;
    out.reserve(static_cast<std::size_t>(to - from + 1));
    BigInt x = narayana(from, max_index);
    BigInt y = narayana(from + 1, max_index + 1);
    BigInt z = narayana(from + 2, max_index + 2);
    for (std::int64_t k = from; k <= to; ++k) {
        out.push_back(x);
        BigInt next = z + x;
        x = std::move(y);
        y = std::move(z);
        z = std::move(next);
    }
    return out;
}

SequenceCache::SequenceCache(std::int64_t max_index) : max_index_(max_index) {
    forward_ = {BigInt(0), BigInt(1), BigInt(1), BigInt(1)};
}

void SequenceCache::check(std::int64_t n) const { check_index(n, max_index_); }

std::int64_t SequenceCache::forward_extent() const {
    std::shared_lock lock(mutex_);
    return static_cast<std::int64_t>(forward_.size()) - 1;
}

std::int64_t SequenceCache::backward_extent() const {
    std::shared_lock lock(mutex_);
    return -static_cast<std::int64_t>(backward_.size());
}

void SequenceCache::extend_to(std::int64_t n) {
    std::unique_lock lock(mutex_);
    if (n >= 0) {
        while (static_cast<std::int64_t>(forward_.size()) <= n) {
            const std::size_t k = forward_.size();
            forward_.push_back(forward_[k - 1] + forward_[k - 3]);
        }
        return;
    }
    // N_{j} = N_{j+3} - N_{j+2}; index helper over both stores.
    auto get = [this](std::int64_t j) -> const BigInt& {
        return j >= 0 ? forward_[static_cast<std::size_t>(j)] : backward_[static_cast<std::size_t>(-j - 1)];
    };
    while (-static_cast<std::int64_t>(backward_.size()) > n) {
        const std::int64_t j = -static_cast<std::int64_t>(backward_.size()) - 1;
        backward_.push_back(get(j + 3) - get(j + 2));
    }
}

BigInt SequenceCache::at(std::int64_t n) {
    check(n);
    {
        std::shared_lock lock(mutex_);
        if (n >= 0 && n < static_cast<std::int64_t>(forward_.size())) return forward_[static_cast<std::size_t>(n)];
        if (n < 0 && -n <= static_cast<std::int64_t>(backward_.size())) return backward_[static_cast<std::size_t>(-n - 1)];
    }
    extend_to(n);
    std::shared_lock lock(mutex_);
    return n >= 0 ? forward_[static_cast<std::size_t>(n)] : backward_[static_cast<std::size_t>(-n - 1)];
}

std::vector<BigInt> SequenceCache::range(std::int64_t from, std::int64_t to) {
    if (from > to) throw std::invalid_argument("SequenceCache::range: from > to");
    check(from);
    check(to);
    extend_to(from);
    extend_to(to);
    std::vector<BigInt> out;
    out.reserve(static_cast<std::size_t>(to - from + 1));
    std::shared_lock lock(mutex_);
    for (std::int64_t n = from; n <= to; ++n) {
        out.push_back(n >= 0 ? forward_[static_cast<std::size_t>(n)] : backward_[static_cast<std::size_t>(-n - 1)]);
    }
    return out;
}

PrecisionReal binet_residual_bound(std::int64_t n, long precision_bits) {
    // alpha^(-n/2) = exp(-(n/2) log alpha)
    const PrecisionReal half_n = PrecisionReal::from_ratio(BigInt(static_cast<long>(n)), BigInt(2), precision_bits);
    return exp(-(half_n * log_alpha(precision_bits)));
}

PrecisionReal binet_residual(std::int64_t n, long precision_bits) {
    if (n <= 1) throw std::invalid_argument("binet_residual: requires n > 1");
    const PrecisionReal a = binet_coefficient_a(precision_bits);
    const PrecisionReal x = alpha(precision_bits);
    const PrecisionReal main_term = a * pow(x, static_cast<unsigned long>(n));
    const PrecisionReal value = PrecisionReal::from_integer(narayana(n), precision_bits);
    const PrecisionReal residual = abs(value - main_term);
    const PrecisionReal scale = binet_residual_bound(n, 64);
    if (residual.width() * 1024.0 > scale.lower()) {
        throw PrecisionExhausted("binet_residual: " + std::to_string(precision_bits) +
                                 " bits cannot resolve the residual at n = " + std::to_string(n));
    }
    return residual;
}

GrowthCheck check_growth_bracket(std::int64_t n, const BigInt& value, int lower_shift, long precision_bits) {
    const PrecisionReal x = alpha(precision_bits);
    const PrecisionReal v = PrecisionReal::from_integer(value, precision_bits);
    auto power = [&](std::int64_t e) {
        if (e >= 0) return pow(x, static_cast<unsigned long>(e));
        return PrecisionReal::from_long(1, precision_bits) / pow(x, static_cast<unsigned long>(-e));
    };
    const PrecisionReal lower = power(n - lower_shift);
    const PrecisionReal upper = power(n - 1);
    GrowthCheck out{};
    out.lower_holds = mpfr_lessequal_p(lower.hi(), v.lo()) != 0;
    out.upper_holds = mpfr_lessequal_p(v.hi(), upper.lo()) != 0;
    return out;
}

} // namespace narep
