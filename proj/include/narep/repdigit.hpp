#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "narep/bigint.hpp"
#include "narep/errors.hpp"

namespace narep {

inline constexpr unsigned kMaxSupportedBase = 64;

/// Positional representation, most significant digit first.
struct DigitString {
    unsigned base = 10;
    std::vector<unsigned> digits;

    friend bool operator==(const DigitString&, const DigitString&) = default;
};

struct Run {
    unsigned digit;
    std::size_t length;

    friend bool operator==(const Run&, const Run&) = default;
};

/// d1 repeated ell times, then d2 repeated m times, then d3 repeated k times,
/// read in base `base`.
struct ConcatPattern {
    unsigned base;
    unsigned d1, d2, d3;
    std::size_t ell, m, k;

    friend bool operator==(const ConcatPattern&, const ConcatPattern&) = default;
};

struct SearchHit {
    std::int64_t n;
    unsigned base;
    BigInt value;
    DigitString digits;
    std::vector<ConcatPattern> patterns;
};

DigitString to_digits(const BigInt& v, unsigned base);
BigInt from_digits(const DigitString& ds);

/// Digits as text: 0-9a-z for bases up to 36, dot-separated decimals above.
std::string render_digits(const DigitString& ds);
DigitString parse_digits(std::string_view text, unsigned base);

std::vector<Run> maximal_runs(const DigitString& ds);

/// Every split of ds into exactly three non-empty constant blocks, ordered by
/// (ell, m). With enforce_ordering only splits with k <= m <= ell are kept.
std::vector<ConcatPattern> three_block_patterns(const DigitString& ds, bool enforce_ordering);

/// (d1 rho^(ell+m+k) - (d1-d2) rho^(m+k) - (d2-d3) rho^k - d3) / (rho - 1).
/// Throws NonExactDivision if the division leaves a remainder, which only an
/// invalid pattern can cause.
BigInt reconstruct(const ConcatPattern& p);

/// The pattern written out digit by digit.
DigitString expand(const ConcatPattern& p);

bool is_valid(const ConcatPattern& p);

struct SearchOptions {
    unsigned base_min = 2;
    unsigned base_max = 10;
    std::int64_t n_min = 4;
    std::int64_t n_max = 600;
    bool enforce_ordering = false;
    unsigned workers = 1;
    bool use_kernels = true; // run-profile prefilter for word-sized values
};

/// All (n, base) where N_n has at least three base-digits and an admissible
/// three-block split, sorted by (n, base).
std::vector<SearchHit> search_hits(const SearchOptions& options);

} // namespace narep
