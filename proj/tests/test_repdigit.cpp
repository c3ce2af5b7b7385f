#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "narep/narayana_seq.hpp"
#include "narep/repdigit.hpp"

using namespace narep;

namespace {

// Every split point pair of the digit string, kept when all three blocks are constant.
std::vector<ConcatPattern> brute_force_splits(const DigitString& ds) {
    std::vector<ConcatPattern> out;
    const auto& d = ds.digits;
    const std::size_t s = d.size();
    if (s < 3 || d[0] == 0) return out;
    auto constant = [&](std::size_t a, std::size_t b) {
        return std::all_of(d.begin() + static_cast<long>(a), d.begin() + static_cast<long>(b),
                           [&](unsigned x) { return x == d[a]; });
    };
    for (std::size_t i = 1; i + 1 < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            if (constant(0, i) && constant(i, j) && constant(j, s)) {
                out.push_back({ds.base, d[0], d[i], d[j], i, j - i, s - j});
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("digits, rendering and parsing") {
    CHECK(to_digits(58425, 5).digits == std::vector<unsigned>{3, 3, 3, 2, 2, 0, 0});
    CHECK(render_digits(to_digits(58425, 7)) == "332223");
    CHECK(render_digits(to_digits(35, 36)) == "z");
    CHECK(render_digits(to_digits(64 * 63 + 5, 64)) == "63.5");
    CHECK(parse_digits("63.5", 64).digits == std::vector<unsigned>{63, 5});
    CHECK(from_digits(parse_digits("11001", 7)) == 2745);
    CHECK(to_digits(0, 2).digits == std::vector<unsigned>{0});
    CHECK_THROWS_AS(to_digits(5, 1), BaseTooSmall);
    CHECK_THROWS(parse_digits("19", 9));
    CHECK_THROWS(to_digits(5, 65));
}

TEST_CASE("maximal runs") {
    const std::vector<Run> runs = maximal_runs(parse_digits("3332200", 5));
    REQUIRE(runs.size() == 3);
    CHECK(runs[0] == Run{3, 3});
    CHECK(runs[1] == Run{2, 2});
    CHECK(runs[2] == Run{0, 2});
}

TEST_CASE("three-block splits match a brute-force enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5000; ++trial) {
        const unsigned base = 2 + static_cast<unsigned>(rng() % 9);
        DigitString ds{base, {}};
        const std::size_t len = 1 + rng() % 9;
        // few distinct digits so that splits are common
        const unsigned alphabet = 1 + static_cast<unsigned>(rng() % std::min(base, 3u));
        for (std::size_t i = 0; i < len; ++i) ds.digits.push_back(static_cast<unsigned>(rng() % alphabet));
        if (ds.digits[0] == 0) ds.digits[0] = 1;
        auto want = brute_force_splits(ds);
        auto got = three_block_patterns(ds, false);
        auto key = [](const ConcatPattern& p) { return std::make_tuple(p.ell, p.m, p.k); };
        std::sort(want.begin(), want.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
        CHECK(got == want);
        for (const auto& p : got) CHECK(reconstruct(p) == from_digits(ds));
        auto ordered = three_block_patterns(ds, true);
        for (const auto& p : ordered) CHECK((p.k <= p.m && p.m <= p.ell));
        CHECK(ordered.size() <= got.size());
    }
}

TEST_CASE("reconstruct and to_digits round-trip on random patterns") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const unsigned base = 2 + static_cast<unsigned>(rng() % 63);
        ConcatPattern p{base,
                        1 + static_cast<unsigned>(rng() % (base - 1)),
                        static_cast<unsigned>(rng() % base),
                        static_cast<unsigned>(rng() % base),
                        1 + rng() % 40,
                        1 + rng() % 40,
                        1 + rng() % 40};
        const BigInt v = reconstruct(p);
        CHECK(to_digits(v, base) == expand(p));
        const auto splits = three_block_patterns(to_digits(v, base), false);
        CHECK(std::find(splits.begin(), splits.end(), p) != splits.end());
    }
}

TEST_CASE("invalid patterns are rejected") {
    CHECK_FALSE(is_valid(ConcatPattern{10, 0, 1, 1, 1, 1, 1}));
    CHECK_FALSE(is_valid(ConcatPattern{10, 1, 1, 1, 0, 1, 1}));
    CHECK_FALSE(is_valid(ConcatPattern{10, 1, 10, 1, 1, 1, 1}));
    CHECK_THROWS(reconstruct(ConcatPattern{10, 0, 1, 1, 1, 1, 1}));
}

TEST_CASE("search: the known values for bases 2..10") {
    const std::vector<SearchHit> hits = search_hits(SearchOptions{});
    std::set<BigInt> values;
    for (const auto& h : hits) values.insert(h.value);
    const std::set<BigInt> want = {4, 6, 9, 13, 19, 28, 41, 60, 88, 129, 189,
                                   277, 406, 595, 872, 1278, 1873, 2745, 4023, 18560, 58425};
    CHECK(values == want);
    for (std::size_t i = 1; i < hits.size(); ++i) {
        CHECK(std::make_pair(hits[i - 1].n, hits[i - 1].base) < std::make_pair(hits[i].n, hits[i].base));
    }
}

TEST_CASE("search: one base, and a range with no hits") {
    SearchOptions o;
    o.base_min = o.base_max = 7;
    const auto hits = search_hits(o);
    auto has = [&](std::int64_t n, const char* digits) {
        return std::any_of(hits.begin(), hits.end(),
                           [&](const SearchHit& h) { return h.n == n && render_digits(h.digits) == digits; });
    };
    CHECK(has(23, "11001"));
    CHECK(has(31, "332223"));

    SearchOptions tiny;
    tiny.base_min = tiny.base_max = 2;
    tiny.n_max = 5;
    CHECK(search_hits(tiny).empty());
}

TEST_CASE("search: kernel prefilter, worker count and the big-integer path agree") {
    SearchOptions a;
    a.base_min = 2;
    a.base_max = 16;
    a.n_max = 400;
    SearchOptions b = a;
    b.use_kernels = false;
    b.workers = 3;
    const auto x = search_hits(a);
    const auto y = search_hits(b);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].n == y[i].n);
        CHECK(x[i].base == y[i].base);
        CHECK(x[i].patterns == y[i].patterns);
    }
}
