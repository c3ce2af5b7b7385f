// Compiled with -mavx2; only reached through dispatch after a CPU check.
#include "narep/run_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace narep::kernels {

namespace {

// u64 lanes below 2^52 to exact doubles: OR in the exponent of 2^52, then
// subtract 2^52.
inline __m256d u52_to_pd(__m256i v) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic)), _mm256_set1_pd(4503599627370496.0));
}

// q = floor(v / base), r = v - q * base for exact integer-valued lanes.
// v * inv is within one unit of the true quotient; one correction step fixes it.
inline void divmod(__m256d v, __m256d base, __m256d inv, __m256d& q, __m256d& r) {
    q = _mm256_floor_pd(_mm256_mul_pd(v, inv));
    r = _mm256_sub_pd(v, _mm256_mul_pd(q, base));
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
    q = _mm256_sub_pd(q, _mm256_and_pd(neg, one));
    r = _mm256_add_pd(r, _mm256_and_pd(neg, base));
    const __m256d over = _mm256_cmp_pd(r, base, _CMP_GE_OQ);
    q = _mm256_add_pd(q, _mm256_and_pd(over, one));
    r = _mm256_sub_pd(r, _mm256_and_pd(over, base));
}

} // namespace

void run_profiles_avx2(std::span<const std::uint64_t> values, unsigned base, std::span<RunProfile> out) {
    const __m256d vbase = _mm256_set1_pd(static_cast<double>(base));
    const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(base));
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();

    const std::size_t n = values.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = u52_to_pd(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(values.data() + i)));
        __m256d q, r;
        divmod(v, vbase, vinv, q, r);
        __m256d prev = r;
        v = q;
        __m256d digits = one;
        __m256d runs = one;
        for (;;) {
            const __m256d active = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
            if (_mm256_movemask_pd(active) == 0) break;
            divmod(v, vbase, vinv, q, r);
            const __m256d changed = _mm256_and_pd(_mm256_cmp_pd(r, prev, _CMP_NEQ_OQ), active);
            digits = _mm256_add_pd(digits, _mm256_and_pd(active, one));
            runs = _mm256_add_pd(runs, _mm256_and_pd(changed, one));
            prev = _mm256_blendv_pd(prev, r, active);
            v = _mm256_blendv_pd(v, q, active);
        }
        alignas(32) double dg[4];
        alignas(32) double rn[4];
        _mm256_store_pd(dg, digits);
        _mm256_store_pd(rn, runs);
        for (int lane = 0; lane < 4; ++lane) {
            out[i + lane] = RunProfile{static_cast<std::uint8_t>(dg[lane]), static_cast<std::uint8_t>(rn[lane])};
        }
    }
    if (i < n) run_profiles_scalar(values.subspan(i), base, out.subspan(i));
}

} // namespace narep::kernels

#endif
