#include "narep/run_kernels.hpp"

namespace narep::kernels {

void run_profiles_scalar(std::span<const std::uint64_t> values, unsigned base, std::span<RunProfile> out) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint64_t v = values[i];
        std::uint64_t prev = v % base;
        v /= base;
        unsigned digits = 1;
        unsigned runs = 1;
        while (v != 0) {
            const std::uint64_t d = v % base;
            v /= base;
            ++digits;
            runs += d != prev;
            prev = d;
        }
        out[i] = RunProfile{static_cast<std::uint8_t>(digits), static_cast<std::uint8_t>(runs)};
    }
}

} // namespace narep::kernels
