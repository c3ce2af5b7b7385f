#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace narep {

using BigInt = mpz_class;

inline BigInt pow_ui(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

// Number of significant bits of |v| (0 for v == 0).
inline std::size_t bit_length(const BigInt& v) {
    return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline bool fits_u64(const BigInt& v) {
    return v >= 0 && bit_length(v) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

// 64-bit mix of the magnitude limbs and sign, stable across runs.
inline std::uint64_t hash_value(const BigInt& v) {
    const mpz_srcptr z = v.get_mpz_t();
    const std::size_t n = mpz_size(z);
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(n) << 1) ^
                      static_cast<std::uint64_t>(mpz_sgn(z) < 0);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<std::uint64_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i)));
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
    }
    return h;
}

} // namespace narep
