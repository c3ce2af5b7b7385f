#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace narep {

struct ExpectedRepresentation {
    unsigned base;
    std::string digits;
};

/// A published solution: N_n = value, with the base representations listed
/// alongside it. The list can be empty (the published table gives none for 9).
struct ExpectedSolution {
    std::uint64_t value;
    std::int64_t n;
    std::vector<ExpectedRepresentation> representations;
};

/// The 21 values for bases 2..10, in increasing order.
const std::vector<ExpectedSolution>& expected_solutions();

/// Checks every entry: value == N_n, each digit string reads back to value and
/// splits into three constant blocks that reconstruct it. Throws narep::Error.
void self_check_expected_solutions();

} // namespace narep
