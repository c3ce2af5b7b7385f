#include "narep/expected_solutions.hpp"

#include <set>

#include "narep/errors.hpp"
#include "narep/narayana_seq.hpp"
#include "narep/repdigit.hpp"

namespace narep {

const std::vector<ExpectedSolution>& expected_solutions() {
    static const std::vector<ExpectedSolution> table = {
        {4, 6, {{2, "100"}}},
        {6, 7, {{2, "110"}}},
        {9, 8, {}},
        {13, 9, {{3, "111"}, {2, "1101"}}},
        {19, 10, {{2, "10011"}, {3, "201"}, {4, "103"}}},
        {28, 11, {{3, "1001"}, {4, "130"}, {5, "103"}, {2, "11100"}}},
        {41, 12, {{3, "1112"}, {4, "221"}, {5, "131"}}},
        {60, 13, {{2, "111100"}, {4, "330"}, {5, "220"}, {6, "140"}, {7, "114"}}},
        {88, 14, {{5, "323"}, {6, "224"}, {7, "154"}, {8, "130"}, {4, "1120"}, {9, "107"}}},
        {129, 15,
         {{6, "333"}, {7, "243"}, {8, "201"}, {5, "1004"}, {4, "2001"}, {9, "153"}, {2, "10000001"}, {10, "129"}}},
        {189, 16,
         {{4, "2331"}, {3, "21000"}, {7, "360"}, {9, "230"}, {5, "1224"}, {6, "513"}, {8, "275"}, {10, "189"}}},
        {277, 17, {{6, "1141"}, {7, "544"}, {8, "425"}, {9, "337"}, {4, "10111"}}},
        {406, 18, {{5, "3111"}, {8, "626"}, {7, "1120"}, {9, "501"}, {10, "406"}}},
        {595, 19, {{8, "1123"}, {9, "731"}, {10, "595"}}},
        {872, 20, {{5, "11442"}, {9, "1168"}, {8, "1550"}, {10, "872"}}},
        {1278, 21, {{6, "5530"}}},
        {1873, 22, {{5, "24443"}, {9, "2511"}}},
        {2745, 23, {{7, "11001"}}},
        {4023, 24, {{8, "7667"}}},
        {18560, 28, {{8, "44200"}}},
        {58425, 31, {{5, "3332200"}, {7, "332223"}}},
    };
    return table;
}

void self_check_expected_solutions() {
    std::set<std::uint64_t> seen;
    for (const auto& e : expected_solutions()) {
        const std::string where = "expected solution " + std::to_string(e.value);
        if (!seen.insert(e.value).second) throw Error(where + " is listed twice");
        if (narayana(e.n) != e.value) throw Error(where + " is not N_" + std::to_string(e.n));
        for (const auto& r : e.representations) {
            const DigitString ds = parse_digits(r.digits, r.base);
            if (from_digits(ds) != e.value) {
                throw Error(where + ": " + r.digits + " in base " + std::to_string(r.base) + " has another value");
            }
            const auto patterns = three_block_patterns(ds, false);
            if (patterns.empty()) throw Error(where + ": " + r.digits + " is not three repdigit blocks");
            for (const auto& p : patterns) {
                if (reconstruct(p) != e.value) throw Error(where + ": block split does not reconstruct");
            }
        }
    }
    if (seen.size() != 21) throw Error("expected solution table must hold 21 values");
}

} // namespace narep
