#include "narep/repdigit.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <thread>

#include "narep/narayana_seq.hpp"
#include "narep/run_kernels.hpp"

namespace narep {

namespace {

void check_base(unsigned base) {
    if (base < 2) throw BaseTooSmall("base must be at least 2, got " + std::to_string(base));
    if (base > kMaxSupportedBase) {
        throw std::invalid_argument("base above supported maximum " + std::to_string(kMaxSupportedBase));
    }
}

bool ordered(const ConcatPattern& p) { return p.k <= p.m && p.m <= p.ell; }

std::optional<SearchHit> examine(std::int64_t n, const BigInt& value, unsigned base, bool enforce_ordering) {
    DigitString ds = to_digits(value, base);
    if (ds.digits.size() < 3) return std::nullopt;
    std::vector<ConcatPattern> patterns = three_block_patterns(ds, enforce_ordering);
    if (patterns.empty()) return std::nullopt;
    return SearchHit{n, base, value, std::move(ds), std::move(patterns)};
}

} // namespace

DigitString to_digits(const BigInt& v, unsigned base) {
    check_base(base);
    if (v < 0) throw std::invalid_argument("to_digits: negative value");
    DigitString ds{base, {}};
    if (v == 0) {
        ds.digits.push_back(0);
        return ds;
    }
    if (base <= 36) {
        const std::string text = v.get_str(static_cast<int>(base));
        ds.digits.reserve(text.size());
        for (char c : text) {
            ds.digits.push_back(c <= '9' ? static_cast<unsigned>(c - '0') : static_cast<unsigned>(c - 'a' + 10));
        }
        return ds;
    }
    BigInt rest = v;
    while (rest != 0) {
        ds.digits.push_back(static_cast<unsigned>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base)));
    }
    std::reverse(ds.digits.begin(), ds.digits.end());
    return ds;
}

BigInt from_digits(const DigitString& ds) {
    check_base(ds.base);
    BigInt v = 0;
    for (unsigned d : ds.digits) {
        if (d >= ds.base) throw std::invalid_argument("from_digits: digit out of range");
        v = v * ds.base + d;
    }
    return v;
}

std::string render_digits(const DigitString& ds) {
    std::string out;
    if (ds.base <= 36) {
        for (unsigned d : ds.digits) out.push_back(d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10));
        return out;
    }
    for (std::size_t i = 0; i < ds.digits.size(); ++i) {
        if (i) out.push_back('.');
        out += std::to_string(ds.digits[i]);
    }
    return out;
}

DigitString parse_digits(std::string_view text, unsigned base) {
    check_base(base);
    DigitString ds{base, {}};
    auto push = [&](unsigned d) {
        if (d >= base) throw std::invalid_argument("parse_digits: digit out of range for base");
        ds.digits.push_back(d);
    };
    if (base <= 36) {
        for (char c : text) {
            if (c >= '0' && c <= '9') push(static_cast<unsigned>(c - '0'));
            else if (c >= 'a' && c <= 'z') push(static_cast<unsigned>(c - 'a' + 10));
            else throw std::invalid_argument("parse_digits: bad character");
        }
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t dot = std::min(text.find('.', start), text.size());
            push(static_cast<unsigned>(std::stoul(std::string(text.substr(start, dot - start)))));
            start = dot + 1;
        }
    }
    if (ds.digits.empty()) throw std::invalid_argument("parse_digits: empty");
    return ds;
}

std::vector<Run> maximal_runs(const DigitString& ds) {
    std::vector<Run> runs;
    for (unsigned d : ds.digits) {
        if (!runs.empty() && runs.back().digit == d) {
            ++runs.back().length;
        } else {
            runs.push_back({d, 1});
        }
    }
    return runs;
}

std::vector<ConcatPattern> three_block_patterns(const DigitString& ds, bool enforce_ordering) {
    std::vector<ConcatPattern> out;
    if (ds.digits.size() < 3 || ds.digits.front() == 0) return out;
    const std::vector<Run> runs = maximal_runs(ds);
    const unsigned b = ds.base;
    auto add = [&](const Run& x, std::size_t lx, const Run& y, std::size_t ly, const Run& z, std::size_t lz) {
        ConcatPattern p{b, x.digit, y.digit, z.digit, lx, ly, lz};
        if (!enforce_ordering || ordered(p)) out.push_back(p);
    };
    switch (runs.size()) {
    case 3:
        add(runs[0], runs[0].length, runs[1], runs[1].length, runs[2], runs[2].length);
        break;
    case 2: {
        const Run& x = runs[0];
        const Run& y = runs[1];
        for (std::size_t i = 1; i < x.length; ++i) add(x, i, x, x.length - i, y, y.length);
        for (std::size_t j = 1; j < y.length; ++j) add(x, x.length, y, j, y, y.length - j);
        break;
    }
    case 1: {
        const Run& x = runs[0];
        for (std::size_t i = 1; i + 2 <= x.length; ++i) {
            for (std::size_t j = 1; i + j < x.length; ++j) add(x, i, x, j, x, x.length - i - j);
        }
        break;
    }
    default:
        break;
    }
    std::sort(out.begin(), out.end(), [](const ConcatPattern& a, const ConcatPattern& c) {
        return a.ell != c.ell ? a.ell < c.ell : a.m < c.m;
    });
    return out;
}

bool is_valid(const ConcatPattern& p) {
    return p.base >= 2 && p.base <= kMaxSupportedBase && p.d1 >= 1 && p.d1 < p.base && p.d2 < p.base &&
           p.d3 < p.base && p.ell >= 1 && p.m >= 1 && p.k >= 1;
}

BigInt reconstruct(const ConcatPattern& p) {
    if (!is_valid(p)) throw std::invalid_argument("reconstruct: pattern violates its invariants");
    const unsigned long r = p.base;
    const BigInt d1 = p.d1, d2 = p.d2, d3 = p.d3;
    BigInt num = d1 * pow_ui(r, p.ell + p.m + p.k) - (d1 - d2) * pow_ui(r, p.m + p.k) -
                 (d2 - d3) * pow_ui(r, p.k) - d3;
    BigInt q, rem;
    mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), r - 1);
    if (rem != 0) throw NonExactDivision("reconstruct: numerator not divisible by base - 1");
    return q;
}

DigitString expand(const ConcatPattern& p) {
    DigitString ds{p.base, {}};
    ds.digits.insert(ds.digits.end(), p.ell, p.d1);
    ds.digits.insert(ds.digits.end(), p.m, p.d2);
    ds.digits.insert(ds.digits.end(), p.k, p.d3);
    return ds;
}

std::vector<SearchHit> search_hits(const SearchOptions& opt) {
    check_base(opt.base_min);
    check_base(opt.base_max);
    if (opt.base_min > opt.base_max) throw std::invalid_argument("search_hits: base_min > base_max");
    if (opt.n_min > opt.n_max) return {};
    const std::int64_t n_lo = std::max<std::int64_t>(opt.n_min, 0);
    if (n_lo > opt.n_max) return {};

    const std::vector<BigInt> values = narayana_range(n_lo, opt.n_max);
    const std::size_t count = values.size();

    // Word-sized prefix handled by the run-profile kernel.
    std::size_t word_count = 0;
    std::vector<std::uint64_t> words;
    if (opt.use_kernels) {
        while (word_count < count && fits_u64(values[word_count]) &&
               to_u64(values[word_count]) <= kernels::kMaxKernelValue) {
            words.push_back(to_u64(values[word_count]));
            ++word_count;
        }
    }

    const unsigned nbases = opt.base_max - opt.base_min + 1;
    const unsigned workers = std::max(1u, std::min(opt.workers, nbases));
    std::vector<std::vector<SearchHit>> partial(workers);

    auto work = [&](unsigned worker) {
        std::vector<kernels::RunProfile> profiles(word_count);
        for (unsigned base = opt.base_min + worker; base <= opt.base_max; base += workers) {
            if (word_count > 0) kernels::run_profiles(words, base, profiles);
            for (std::size_t i = 0; i < count; ++i) {
                if (i < word_count && (profiles[i].digits < 3 || profiles[i].runs > 3)) continue;
                if (auto hit = examine(n_lo + static_cast<std::int64_t>(i), values[i], base, opt.enforce_ordering)) {
                    partial[worker].push_back(std::move(*hit));
                }
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    std::vector<SearchHit> hits;
    for (auto& part : partial) {
        for (auto& h : part) hits.push_back(std::move(h));
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        return a.n != b.n ? a.n < b.n : a.base < b.base;
    });
    return hits;
}

} // namespace narep
