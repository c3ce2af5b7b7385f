#pragma once

#include <cstdint>
#include <shared_mutex>
#include <vector>

#include "narep/bigint.hpp"
#include "narep/errors.hpp"
#include "narep/precision_real.hpp"

namespace narep {

inline constexpr std::int64_t kDefaultMaxIndex = 1'000'000;

/// N_n for any integer n, by the recurrence N_n = N_{n-1} + N_{n-3} with
/// N_0 = 0, N_1 = N_2 = N_3 = 1, run backward (N_{n-3} = N_n - N_{n-1}) for
/// negative n. Stateless: recomputes from the initial terms on every call.
BigInt narayana(std::int64_t n, std::int64_t max_index = kDefaultMaxIndex);

/// Values N_from, ..., N_to in index order.
std::vector<BigInt> narayana_range(std::int64_t from, std::int64_t to,
                                   std::int64_t max_index = kDefaultMaxIndex);

/// Memoized sequence over both index directions. Reads of materialized
/// indices run concurrently; extension takes an exclusive lock.
class SequenceCache {
  public:
    explicit SequenceCache(std::int64_t max_index = kDefaultMaxIndex);

    BigInt at(std::int64_t n);
    std::vector<BigInt> range(std::int64_t from, std::int64_t to);

    std::int64_t max_index() const { return max_index_; }
    /// Highest non-negative and lowest negative index currently stored.
    std::int64_t forward_extent() const;
    std::int64_t backward_extent() const;

  private:
    void check(std::int64_t n) const;
    void extend_to(std::int64_t n);

    std::int64_t max_index_;
    mutable std::shared_mutex mutex_;
    std::vector<BigInt> forward_;  // forward_[i] = N_i, i >= 0
    std::vector<BigInt> backward_; // backward_[i] = N_{-(i+1)}
};

/// |N_n - a alpha^n| as an interval; its upper end is the certified residual.
/// Throws PrecisionExhausted when the enclosure is too wide to resolve the
/// residual at the scale alpha^(-n/2).
PrecisionReal binet_residual(std::int64_t n, long precision_bits);

/// alpha^(-n/2), the residual bound the closed form is expected to satisfy.
PrecisionReal binet_residual_bound(std::int64_t n, long precision_bits);

struct GrowthCheck {
    bool lower_holds; // alpha^(n - lower_shift) <= N_n, certified
    bool upper_holds; // N_n <= alpha^(n - 1), certified
};

/// Certified comparison of N_n against alpha^(n - lower_shift) and
/// alpha^(n - 1). lower_shift = 2 is the classical statement; see README for
/// why only lower_shift = 3 holds beyond n = 2.
GrowthCheck check_growth_bracket(std::int64_t n, const BigInt& value, int lower_shift = 2,
                                 long precision_bits = 256);

} // namespace narep
