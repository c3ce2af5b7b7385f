#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "narep/run_kernels.hpp"

namespace narep::kernels {

const char* isa_name(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa best_isa() {
    if (const char* env = std::getenv("NAREP_ISA")) {
        const std::string_view want(env);
        if (want == "scalar") return Isa::Scalar;
        if (want == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

void run_profiles(std::span<const std::uint64_t> values, unsigned base, std::span<RunProfile> out, Isa isa) {
    if (base < kMinBase || base > kMaxBase) throw std::invalid_argument("run_profiles: base out of range");
    if (out.size() < values.size()) throw std::invalid_argument("run_profiles: output span too small");
    for (std::uint64_t v : values) {
        if (v > kMaxKernelValue) throw std::invalid_argument("run_profiles: value exceeds kMaxKernelValue");
    }
    switch (isa) {
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        if (isa_available(Isa::Avx2)) {
            run_profiles_avx2(values, base, out);
            return;
        }
#endif
        [[fallthrough]];
    case Isa::Scalar:
        run_profiles_scalar(values, base, out);
        return;
    }
}

} // namespace narep::kernels
