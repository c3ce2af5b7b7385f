#pragma once

// Batched base-rho digit run profiling for machine-word values.
//
// A run profile is (digit count, number of maximal constant runs) of the
// positional representation of a value. The repdigit search uses it as a
// prefilter: a value can only be a concatenation of three repdigits if it has
// at least three digits and at most three runs. The scalar kernel is the
// reference; SIMD variants must agree with it bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>

namespace narep::kernels {

// Values at or below this bound convert exactly to double, which the SIMD
// kernels rely on for division by the base.
inline constexpr std::uint64_t kMaxKernelValue = (std::uint64_t{1} << 52) - 1;
inline constexpr unsigned kMinBase = 2;
inline constexpr unsigned kMaxBase = 64;

struct RunProfile {
    std::uint8_t digits;
    std::uint8_t runs;

    friend bool operator==(const RunProfile&, const RunProfile&) = default;
};

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);

/// Best available ISA; the environment variable NAREP_ISA=scalar|avx2
/// overrides the choice when the requested ISA is available.
Isa best_isa();

void run_profiles_scalar(std::span<const std::uint64_t> values, unsigned base, std::span<RunProfile> out);
#if defined(__x86_64__) || defined(_M_X64)
void run_profiles_avx2(std::span<const std::uint64_t> values, unsigned base, std::span<RunProfile> out);
#endif

/// Dispatches to the kernel for `isa`. Requires values <= kMaxKernelValue,
/// kMinBase <= base <= kMaxBase and out.size() >= values.size().
void run_profiles(std::span<const std::uint64_t> values, unsigned base, std::span<RunProfile> out,
                  Isa isa = best_isa());

} // namespace narep::kernels
