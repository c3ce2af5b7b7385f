#include "narep/dp_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <utility>

namespace narep {

namespace {

// Convergents tried by the sweep fast paths before falling back to reduce_case.
constexpr std::size_t kFastConvergents = 3;
constexpr long kMaxTauBits = 1L << 16;

const PrecisionReal& memo(std::map<long, PrecisionReal>& table, std::mutex& mu, long bits,
                          PrecisionReal (*make)(long)) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(bits);
    if (it == table.end()) it = table.emplace(bits, make(bits)).first;
    return it->second;
}

PrecisionReal cached_log_alpha(long bits) {
    static std::map<long, PrecisionReal> table;
    static std::mutex mu;
    return memo(table, mu, bits, &log_alpha);
}

PrecisionReal make_log_a(long bits) { return log(binet_coefficient_a(bits + 16)).at_precision(bits); }

PrecisionReal cached_log_a(long bits) {
    static std::map<long, PrecisionReal> table;
    static std::mutex mu;
    return memo(table, mu, bits, &make_log_a);
}

// log((rho - 1) a)
PrecisionReal log_scale(unsigned rho, long bits) {
    PrecisionReal v = cached_log_a(bits);
    if (rho > 2) v += log(PrecisionReal::from_long(static_cast<long>(rho) - 1, bits));
    return v;
}

long a_numerator(int step) {
    switch (step) {
    case 1:
        return 6;
    case 2:
        return 4;
    case 3:
        return 10;
    }
    throw std::invalid_argument("unknown reduction step " + std::to_string(step));
}

PrecisionReal point_from_double(double v, long bits) {
    detail::Mpfr x(bits);
    mpfr_set_d(x.get(), v, MPFR_RNDN); // exact: bits >= 53
    return PrecisionReal::from_endpoints(x.get(), x.get(), bits);
}

PrecisionReal epsilon_at(const PrecisionReal& mu, const PrecisionReal& tau, const BigInt& q, const BigInt& M) {
    return nearest_int_distance(mu.mul(q)) - nearest_int_distance(tau.mul(q)).mul(M);
}

// floor(log(A q / eps) / log B) from a certified lower bound of eps.
long w_from_epsilon(const PrecisionReal& A, const PrecisionReal& B, const BigInt& q, double eps_lower) {
    const long bits = A.precision_bits();
    const PrecisionReal ratio = A.mul(q) / point_from_double(eps_lower, bits);
    return floor_upper(log(ratio) / log(B)).get_si();
}

// Precision at which tau q is good to ~2^-64 after scaling by M.
long tau_bits_for(const BigInt& q, const BigInt& M, long precision) {
    return std::max<long>(precision, static_cast<long>(bit_length(q) + bit_length(M)) + 96);
}

void truncate(ContinuedFraction& cf, std::size_t n) {
    if (cf.size() <= n) return;
    cf.partial_quotients.resize(n);
    cf.convergents.resize(n);
    cf.terminated = false;
}

// Subtracts the integer part so later products stay small.
PrecisionReal fractional(const PrecisionReal& x) {
    return x - PrecisionReal::from_integer(floor_lower(x), x.precision_bits());
}

template <class Fn>
void run_workers(std::size_t n, unsigned workers, Fn&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        fn(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(n, w * chunk);
            const std::size_t end = std::min(n, begin + chunk);
            pool.emplace_back([&, begin, end, w] {
                try {
                    fn(begin, end, w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct Best {
    double eps = std::numeric_limits<double>::infinity();
    std::uint64_t id = std::numeric_limits<std::uint64_t>::max();

    void offer(double e, std::uint64_t i) {
        if (e < eps || (e == eps && i < id)) {
            eps = e;
            id = i;
        }
    }
    bool used() const { return id != std::numeric_limits<std::uint64_t>::max(); }
};

// Describes one sweep: how to label a case id, its argument V, and how to try
// it cheaply. fast() returns (offset from the first usable convergent, eps
// lower bound) or nothing when the caller should fall back to reduce_case.
struct Sweep {
    int step = 0;
    unsigned rho = 0;
    std::uint64_t total = 0;
    std::function<CaseLabel(std::uint64_t)> label;
    std::function<BigInt(std::uint64_t)> argument;
    std::function<std::optional<std::pair<std::size_t, double>>(std::uint64_t, unsigned)> fast;
};

std::vector<std::uint64_t> distinct_ids(const Sweep& s, unsigned workers) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed(s.total);
    run_workers(s.total, workers, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) keyed[i] = {hash_value(s.argument(i)), i};
    });
    std::sort(keyed.begin(), keyed.end());

    std::vector<char> skip(s.total, 0);
    for (std::size_t g = 0; g < keyed.size();) {
        std::size_t e = g + 1;
        while (e < keyed.size() && keyed[e].first == keyed[g].first) ++e;
        if (e - g > 1) {
            std::vector<std::pair<BigInt, std::uint64_t>> group;
            for (std::size_t i = g; i < e; ++i) group.emplace_back(s.argument(keyed[i].second), keyed[i].second);
            for (std::size_t i = 0; i < group.size(); ++i) {
                if (skip[group[i].second]) continue;
                for (std::size_t j = i + 1; j < group.size(); ++j) {
                    if (group[j].first == group[i].first) skip[group[j].second] = 1; // ids ascend within a group
                }
            }
        }
        g = e;
    }
    std::vector<std::uint64_t> ids;
    ids.reserve(s.total);
    for (std::uint64_t i = 0; i < s.total; ++i) {
        if (!skip[i]) ids.push_back(i);
    }
    return ids;
}

StepReport run_sweep(const Sweep& s, const TauContext& ctx, const ReductionOptions& opt) {
    const std::vector<std::uint64_t> ids = distinct_ids(s, opt.workers);
    const std::size_t slots = static_cast<std::size_t>(opt.max_extra_convergents) + 1;

    struct Partial {
        std::vector<Best> best;
        std::uint64_t failed = std::numeric_limits<std::uint64_t>::max();
    };
    const unsigned workers = std::max(1u, opt.workers);
    std::vector<Partial> partial(workers, Partial{std::vector<Best>(slots), std::numeric_limits<std::uint64_t>::max()});

    run_workers(ids.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        Partial& out = partial[w];
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t id = ids[i];
            if (auto hit = s.fast(id, w)) {
                out.best[hit->first].offer(hit->second, id);
                continue;
            }
            try {
                const ReductionOutcome r =
                    reduce_case(make_linear_form_case(s.label(id), ctx.M), ctx.cf, opt.max_extra_convergents,
                                opt.precision);
                out.best[r.convergent_index - 1 - ctx.first_position].offer(r.epsilon.lower(), id);
            } catch (const EpsilonNeverPositive&) {
                out.failed = std::min(out.failed, id);
            }
        }
    });

    std::vector<Best> best(slots);
    std::uint64_t failed = std::numeric_limits<std::uint64_t>::max();
    for (const auto& p : partial) {
        failed = std::min(failed, p.failed);
        for (std::size_t k = 0; k < slots; ++k) {
            if (p.best[k].used()) best[k].offer(p.best[k].eps, p.best[k].id);
        }
    }
    if (failed != std::numeric_limits<std::uint64_t>::max()) {
        throw EpsilonNeverPositive("no certified positive epsilon within " +
                                   std::to_string(opt.max_extra_convergents) +
                                   " extra convergents for " + s.label(failed).to_string());
    }

    StepReport rep;
    rep.step = s.step;
    rep.rho = s.rho;
    rep.cases_total = s.total;
    rep.cases_evaluated = ids.size();
    rep.duplicates_skipped = s.total - ids.size();
    rep.epsilon_min = std::numeric_limits<double>::infinity();

    const long bits = ctx.precision;
    const PrecisionReal A = PrecisionReal::from_long(a_numerator(s.step), bits) / cached_log_alpha(bits);
    const PrecisionReal B = PrecisionReal::from_long(static_cast<long>(s.rho), bits);
    long w_best = std::numeric_limits<long>::min();
    std::uint64_t worst_id = 0;
    for (std::size_t k = 0; k < slots; ++k) {
        if (!best[k].used()) continue;
        rep.convergent_indices.push_back(ctx.first_position + k + 1);
        rep.epsilon_min = std::min(rep.epsilon_min, best[k].eps);
        const long w = w_from_epsilon(A, B, ctx.cf.convergents[ctx.first_position + k].q, best[k].eps);
        if (w > w_best || (w == w_best && best[k].id < worst_id)) {
            w_best = w;
            worst_id = best[k].id;
        }
    }
    if (ids.empty()) throw InvalidInstance("reduction sweep has no cases");

    rep.worst_case = s.label(worst_id);
    rep.worst = reduce_case(make_linear_form_case(rep.worst_case, ctx.M), ctx.cf, opt.max_extra_convergents,
                            opt.precision);
    rep.w_max = std::max(w_best, rep.worst.w_max);
    rep.bound = s.step == 3 ? rep.w_max : rep.w_max + 1;
    return rep;
}

// Values shared by the fast paths at the per-case working precision.
struct FastTables {
    long bits = 0;
    PrecisionReal log_alpha;
    PrecisionReal log_scale;
    std::vector<BigInt> q;
    std::vector<PrecisionReal> tau_frac; // fractional part of tau q_k
    std::vector<PrecisionReal> m_dist;   // M ||tau q_k||

    std::optional<std::pair<std::size_t, double>> judge(const PrecisionReal& eps, std::size_t k) const {
        if (eps.lower() > kEpsilonFloor) return std::make_pair(k, eps.lower());
        return std::nullopt;
    }
};

FastTables fast_tables(const TauContext& ctx) {
    FastTables t;
    const std::size_t count = std::min(kFastConvergents, ctx.cf.size() - ctx.first_position);
    const BigInt& q_last = ctx.cf.convergents[ctx.first_position + count - 1].q;
    t.bits = static_cast<long>(bit_length(q_last)) + 128;
    t.log_alpha = cached_log_alpha(t.bits);
    t.log_scale = log_scale(ctx.rho, t.bits);
    const long tau_bits = tau_bits_for(q_last, ctx.M, ctx.precision);
    const PrecisionReal tau = tau_fn(ctx.rho)(tau_bits);
    for (std::size_t k = 0; k < count; ++k) {
        const BigInt& q = ctx.cf.convergents[ctx.first_position + k].q;
        t.q.push_back(q);
        const PrecisionReal tq = tau.mul(q);
        t.tau_frac.push_back(fractional(tq).at_precision(t.bits));
        t.m_dist.push_back(nearest_int_distance(tq).mul(ctx.M).at_precision(t.bits));
    }
    return t;
}

std::optional<std::pair<std::size_t, double>> fast_direct(const FastTables& t, const BigInt& V) {
    const PrecisionReal mu = (log(PrecisionReal::from_integer(V, t.bits)) - t.log_scale) / t.log_alpha;
    for (std::size_t k = 0; k < t.q.size(); ++k) {
        const PrecisionReal eps = nearest_int_distance(mu.mul(t.q[k])) - t.m_dist[k];
        if (auto hit = t.judge(eps, k)) return hit;
        if (!eps.certainly_negative()) return std::nullopt;
    }
    return std::nullopt;
}

// Raw-MPFR evaluation of the step-3 epsilon lower bound. All enclosures are
// positive or of known sign, so each endpoint is one directed-rounding call.
class Step3Scratch {
  public:
    struct Verdict {
        bool positive = false; // eps > kEpsilonFloor certified; lower is its lower bound
        bool negative = false; // eps < 0 certified
        double lower = 0;
    };

    explicit Step3Scratch(long bits)
        : w_lo_(bits), w_hi_(bits), r_lo_(bits), r_hi_(bits), d_lo_(bits), d_hi_(bits), x_lo_(bits), x_hi_(bits),
          t_(bits), u_(bits) {}

    // delta = log1p(-c / (U rho^m)) / log alpha.
    void set_delta(long c, const PrecisionReal& U, const PrecisionReal& R, const PrecisionReal& log_alpha,
                   long q_bits) {
        mpfr_mul(w_lo_.get(), U.lo(), R.lo(), MPFR_RNDD);
        mpfr_mul(w_hi_.get(), U.hi(), R.hi(), MPFR_RNDU);
        const unsigned long ac = static_cast<unsigned long>(c > 0 ? c : -c);
        if (c > 0) { // r in [-c / W_lo, -c / W_hi], negative
            mpfr_ui_div(r_lo_.get(), ac, w_lo_.get(), MPFR_RNDU);
            mpfr_neg(r_lo_.get(), r_lo_.get(), MPFR_RNDD);
            mpfr_ui_div(r_hi_.get(), ac, w_hi_.get(), MPFR_RNDD);
            mpfr_neg(r_hi_.get(), r_hi_.get(), MPFR_RNDU);
        } else {
            mpfr_ui_div(r_lo_.get(), ac, w_hi_.get(), MPFR_RNDD);
            mpfr_ui_div(r_hi_.get(), ac, w_lo_.get(), MPFR_RNDU);
        }
        // r / (1 + r) <= log1p(r) <= r; the gap r^2 is invisible after scaling by q.
        const bool tiny = 2 * static_cast<long>(mpfr_get_exp(r_lo_.get())) + q_bits < -96;
        if (tiny) {
            mpfr_add_ui(t_.get(), r_lo_.get(), 1, mpfr_sgn(r_lo_.get()) < 0 ? MPFR_RNDD : MPFR_RNDU);
            mpfr_div(d_lo_.get(), r_lo_.get(), t_.get(), MPFR_RNDD);
            mpfr_set(d_hi_.get(), r_hi_.get(), MPFR_RNDU);
        } else {
            mpfr_log1p(d_lo_.get(), r_lo_.get(), MPFR_RNDD);
            mpfr_log1p(d_hi_.get(), r_hi_.get(), MPFR_RNDU);
        }
        // Same sign throughout: divide by the end of log alpha that moves each bound outward.
        if (c > 0) {
            mpfr_div(d_lo_.get(), d_lo_.get(), log_alpha.lo(), MPFR_RNDD);
            mpfr_div(d_hi_.get(), d_hi_.get(), log_alpha.hi(), MPFR_RNDU);
        } else {
            mpfr_div(d_lo_.get(), d_lo_.get(), log_alpha.hi(), MPFR_RNDD);
            mpfr_div(d_hi_.get(), d_hi_.get(), log_alpha.lo(), MPFR_RNDU);
        }
    }

    // eps = ||mu2_frac + m tau_frac (+ delta q)|| - M ||tau q||.
    Verdict epsilon(const PrecisionReal& mu2_frac, const PrecisionReal& tau_frac, unsigned long m, bool with_delta,
                    const BigInt& q, const PrecisionReal& m_dist) {
        mpfr_mul_ui(x_lo_.get(), tau_frac.lo(), m, MPFR_RNDD);
        mpfr_mul_ui(x_hi_.get(), tau_frac.hi(), m, MPFR_RNDU);
        mpfr_add(x_lo_.get(), x_lo_.get(), mu2_frac.lo(), MPFR_RNDD);
        mpfr_add(x_hi_.get(), x_hi_.get(), mu2_frac.hi(), MPFR_RNDU);
        if (with_delta) {
            mpfr_mul_z(t_.get(), d_lo_.get(), q.get_mpz_t(), MPFR_RNDD);
            mpfr_add(x_lo_.get(), x_lo_.get(), t_.get(), MPFR_RNDD);
            mpfr_mul_z(t_.get(), d_hi_.get(), q.get_mpz_t(), MPFR_RNDU);
            mpfr_add(x_hi_.get(), x_hi_.get(), t_.get(), MPFR_RNDU);
        }
        // Shift by floor(x_lo); x then lies in [t, u] with 0 <= t.
        mpfr_floor(t_.get(), x_lo_.get());
        mpfr_sub(u_.get(), x_hi_.get(), t_.get(), MPFR_RNDU);
        mpfr_sub(t_.get(), x_lo_.get(), t_.get(), MPFR_RNDD);
        Verdict v;
        if (mpfr_cmp_ui(u_.get(), 1) >= 0) return v; // an integer may be enclosed
        // distance in [min(t, 1 - u), min(u, 1 - t)]
        mpfr_ui_sub(r_lo_.get(), 1, u_.get(), MPFR_RNDD);
        mpfr_min(r_lo_.get(), r_lo_.get(), t_.get(), MPFR_RNDD);
        mpfr_ui_sub(r_hi_.get(), 1, t_.get(), MPFR_RNDU);
        mpfr_min(r_hi_.get(), r_hi_.get(), u_.get(), MPFR_RNDU);
        mpfr_sub(r_lo_.get(), r_lo_.get(), m_dist.hi(), MPFR_RNDD);
        mpfr_sub(r_hi_.get(), r_hi_.get(), m_dist.lo(), MPFR_RNDU);
        v.lower = mpfr_get_d(r_lo_.get(), MPFR_RNDD);
        v.positive = v.lower > kEpsilonFloor;
        v.negative = mpfr_sgn(r_hi_.get()) < 0;
        return v;
    }

  private:
    detail::Mpfr w_lo_, w_hi_, r_lo_, r_hi_, d_lo_, d_hi_, x_lo_, x_hi_, t_, u_;
};

struct DigitRanges {
    unsigned d2_lo;
    unsigned n_d2;
    unsigned d3_lo;
    unsigned n_d3;
};

DigitRanges digit_ranges(unsigned rho, bool strict) {
    const unsigned lo = strict ? 1 : 0;
    return {lo, rho - lo, lo, rho - lo};
}

void check_base(unsigned rho) {
    if (rho < 2) throw BaseTooSmall("reduction requires rho >= 2");
}

} // namespace

std::string CaseLabel::to_string() const {
    std::string out = "step " + std::to_string(step) + " rho=" + std::to_string(rho) + " d1=" + std::to_string(d1);
    if (step >= 2) out += " d2=" + std::to_string(d2) + " ell=" + std::to_string(ell);
    if (step >= 3) out += " d3=" + std::to_string(d3) + " m=" + std::to_string(m);
    return out;
}

RealFn tau_fn(unsigned rho) {
    check_base(rho);
    return [rho](long bits) {
        return log(PrecisionReal::from_long(static_cast<long>(rho), bits)) / cached_log_alpha(bits);
    };
}

BigInt linear_form_argument(const CaseLabel& c) {
    const BigInt d1 = c.d1;
    const BigInt diff12 = BigInt(c.d1) - BigInt(c.d2);
    switch (c.step) {
    case 1:
        return d1;
    case 2:
        return d1 * pow_ui(c.rho, static_cast<unsigned long>(c.ell)) - diff12;
    case 3: {
        const BigInt rm = pow_ui(c.rho, static_cast<unsigned long>(c.m));
        return (d1 * pow_ui(c.rho, static_cast<unsigned long>(c.ell)) - diff12) * rm -
               (BigInt(c.d2) - BigInt(c.d3));
    }
    }
    throw std::invalid_argument("unknown reduction step " + std::to_string(c.step));
}

ReductionCase make_linear_form_case(const CaseLabel& label, const BigInt& M) {
    check_base(label.rho);
    if (label.d1 < 1 || label.d1 >= label.rho || label.d2 >= label.rho || label.d3 >= label.rho) {
        throw InvalidInstance("digits out of range for " + label.to_string());
    }
    if (M < 1) throw InvalidInstance("M must be at least 1");
    const BigInt V = linear_form_argument(label);
    if (V <= 0) throw InvalidInstance("non-positive logarithm argument for " + label.to_string());
    const unsigned rho = label.rho;
    const long a_num = a_numerator(label.step);
    ReductionCase c;
    c.tau = tau_fn(rho);
    c.mu = [V, rho](long bits) {
        return (log(PrecisionReal::from_integer(V, bits)) - log_scale(rho, bits)) / cached_log_alpha(bits);
    };
    c.A = [a_num](long bits) { return PrecisionReal::from_long(a_num, bits) / cached_log_alpha(bits); };
    c.B = [rho](long bits) { return PrecisionReal::from_long(static_cast<long>(rho), bits); };
    c.M = M;
    c.label = label;
    return c;
}

ContinuedFraction tau_expansion(const RealFn& tau, const BigInt& M, int extra, long precision) {
    const BigInt six_m = M * 6;
    // Each partial quotient costs about 2 * log2(q) bits of the two endpoints' agreement.
    long bits = std::max<long>(precision, 2 * static_cast<long>(bit_length(six_m)) + 64 * (extra + 2));
    for (;; bits *= 2) {
        ContinuedFraction cf = cf_certified_prefix(tau(bits), static_cast<std::size_t>(bits));
        for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
            if (cf.convergents[i].q > six_m && i + static_cast<std::size_t>(extra) < cf.size()) {
                truncate(cf, i + static_cast<std::size_t>(extra) + 1);
                return cf;
            }
        }
        if (bits * 2 > kMaxTauBits) {
            throw PrecisionExhausted("tau_expansion: cannot certify enough partial quotients below " +
                                     std::to_string(kMaxTauBits) + " bits");
        }
    }
}

ReductionOutcome reduce_case(const ReductionCase& c, const ContinuedFraction& tau_cf, int max_extra_convergents,
                             long precision) {
    if (c.M < 1) throw InvalidInstance("reduce_case: M must be at least 1");
    const ConvergentHit first = convergent_exceeding(tau_cf, c.M * 6);
    for (int k = 0; k <= max_extra_convergents; ++k) {
        const std::size_t pos = first.position + static_cast<std::size_t>(k);
        if (pos >= tau_cf.convergents.size()) {
            throw NotReached("reduce_case: continued fraction too short for " + c.label.to_string());
        }
        const BigInt& q = tau_cf.convergents[pos].q;
        const long p1 = tau_bits_for(q, c.M, precision);
        const PrecisionReal e1 = epsilon_at(c.mu(p1), c.tau(p1), q, c.M);
        if (!(e1.lower() > kEpsilonFloor)) continue;
        const PrecisionReal e2 = epsilon_at(c.mu(2 * p1), c.tau(2 * p1), q, c.M);
        if (!(e2.lower() > kEpsilonFloor)) continue;
        if (std::fabs(e1.midpoint() - e2.midpoint()) > std::ldexp(e2.lower(), -20)) continue;

        ReductionOutcome out;
        out.convergent_index = pos + 1;
        out.q = q;
        out.epsilon = e2;
        out.w_max = w_from_epsilon(c.A(p1), c.B(p1), q, e1.lower());
        out.certified = true;
        return out;
    }
    throw EpsilonNeverPositive("no certified positive epsilon within " + std::to_string(max_extra_convergents) +
                               " extra convergents for " + c.label.to_string());
}

ReductionOutcome reduce_case(const ReductionCase& c, int max_extra_convergents, long precision) {
    return reduce_case(c, tau_expansion(c.tau, c.M, max_extra_convergents, precision), max_extra_convergents,
                       precision);
}

TauContext make_tau_context(unsigned rho, const ReductionOptions& opt) {
    check_base(rho);
    if (opt.M < 1) throw InvalidInstance("M must be at least 1");
    if (opt.max_extra_convergents < 0) throw InvalidInstance("max_extra_convergents must be non-negative");
    TauContext ctx;
    ctx.rho = rho;
    ctx.M = opt.M;
    ctx.precision = opt.precision;
    ctx.cf = tau_expansion(tau_fn(rho), opt.M, opt.max_extra_convergents, opt.precision);
    ctx.first_position = convergent_exceeding(ctx.cf, opt.M * 6).position;
    return ctx;
}

StepReport step1(unsigned rho, const ReductionOptions& opt, const TauContext* ctx) {
    const TauContext own = ctx ? TauContext{} : make_tau_context(rho, opt);
    const TauContext& tc = ctx ? *ctx : own;
    const FastTables tables = fast_tables(tc);

    Sweep s;
    s.step = 1;
    s.rho = rho;
    s.total = rho - 1;
    s.label = [rho](std::uint64_t id) {
        CaseLabel l;
        l.step = 1;
        l.rho = rho;
        l.d1 = static_cast<unsigned>(id) + 1;
        return l;
    };
    s.argument = [&](std::uint64_t id) { return linear_form_argument(s.label(id)); };
    s.fast = [&](std::uint64_t id, unsigned) { return fast_direct(tables, s.argument(id)); };
    return run_sweep(s, tc, opt);
}

StepReport step2(unsigned rho, long ell_max, const ReductionOptions& opt, const TauContext* ctx) {
    if (ell_max < 1) throw InvalidInstance("step2: ell_max must be at least 1");
    const TauContext own = ctx ? TauContext{} : make_tau_context(rho, opt);
    const TauContext& tc = ctx ? *ctx : own;
    const FastTables tables = fast_tables(tc);
    const DigitRanges dr = digit_ranges(rho, opt.strict_paper);

    Sweep s;
    s.step = 2;
    s.rho = rho;
    s.total = static_cast<std::uint64_t>(rho - 1) * dr.n_d2 * static_cast<std::uint64_t>(ell_max);
    s.label = [rho, dr, ell_max](std::uint64_t id) {
        CaseLabel l;
        l.step = 2;
        l.rho = rho;
        l.ell = static_cast<long>(id % static_cast<std::uint64_t>(ell_max)) + 1;
        id /= static_cast<std::uint64_t>(ell_max);
        l.d2 = dr.d2_lo + static_cast<unsigned>(id % dr.n_d2);
        l.d1 = static_cast<unsigned>(id / dr.n_d2) + 1;
        return l;
    };
    s.argument = [&](std::uint64_t id) { return linear_form_argument(s.label(id)); };
    s.fast = [&](std::uint64_t id, unsigned) { return fast_direct(tables, s.argument(id)); };
    return run_sweep(s, tc, opt);
}

StepReport step3(unsigned rho, long ell_max, long m_max, const ReductionOptions& opt, const TauContext* ctx) {
    if (ell_max < 1 || m_max < 1) throw InvalidInstance("step3: ell_max and m_max must be at least 1");
    const TauContext own = ctx ? TauContext{} : make_tau_context(rho, opt);
    const TauContext& tc = ctx ? *ctx : own;
    const FastTables t = fast_tables(tc);
    const DigitRanges dr = digit_ranges(rho, opt.strict_paper);
    const auto L = static_cast<std::uint64_t>(ell_max);
    const auto Mm = static_cast<std::uint64_t>(m_max);

    // Prefix U = d1 rho^ell - (d1 - d2), indexed by (d1, d2, ell).
    const std::size_t n_prefix = static_cast<std::size_t>(rho - 1) * dr.n_d2 * L;
    std::vector<BigInt> U(n_prefix);
    std::vector<PrecisionReal> U_real(n_prefix);
    std::vector<std::vector<PrecisionReal>> mu2_frac(n_prefix); // fractional part of mu2 q_k
    run_workers(n_prefix, opt.workers, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t u = begin; u < end; ++u) {
            const std::uint64_t ell = u % L + 1;
            const unsigned d2 = dr.d2_lo + static_cast<unsigned>((u / L) % dr.n_d2);
            const unsigned d1 = static_cast<unsigned>(u / L / dr.n_d2) + 1;
            U[u] = BigInt(d1) * pow_ui(rho, ell) - (BigInt(d1) - BigInt(d2));
            U_real[u] = PrecisionReal::from_integer(U[u], t.bits);
            const PrecisionReal mu2 = (log(U_real[u]) - t.log_scale) / t.log_alpha;
            for (const BigInt& q : t.q) mu2_frac[u].push_back(fractional(mu2.mul(q)));
        }
    });
    std::vector<BigInt> rho_pow(Mm + 1);
    std::vector<PrecisionReal> rho_pow_real(Mm + 1);
    for (std::uint64_t m = 0; m <= Mm; ++m) {
        rho_pow[m] = pow_ui(rho, m);
        rho_pow_real[m] = PrecisionReal::from_integer(rho_pow[m], t.bits);
    }

    struct Parts {
        std::size_t u;
        unsigned d1, d2, d3;
        long ell, m;
    };
    auto decode = [&](std::uint64_t id) {
        Parts p;
        p.m = static_cast<long>(id % Mm) + 1;
        id /= Mm;
        p.ell = static_cast<long>(id % L) + 1;
        id /= L;
        p.d3 = dr.d3_lo + static_cast<unsigned>(id % dr.n_d3);
        id /= dr.n_d3;
        p.d2 = dr.d2_lo + static_cast<unsigned>(id % dr.n_d2);
        p.d1 = static_cast<unsigned>(id / dr.n_d2) + 1;
        p.u = ((static_cast<std::size_t>(p.d1) - 1) * dr.n_d2 + (p.d2 - dr.d2_lo)) * L +
              static_cast<std::size_t>(p.ell - 1);
        return p;
    };

    Sweep s;
    s.step = 3;
    s.rho = rho;
    s.total = static_cast<std::uint64_t>(rho - 1) * dr.n_d2 * dr.n_d3 * L * Mm;
    s.label = [&](std::uint64_t id) {
        const Parts p = decode(id);
        CaseLabel l;
        l.step = 3;
        l.rho = rho;
        l.d1 = p.d1;
        l.d2 = p.d2;
        l.d3 = p.d3;
        l.ell = p.ell;
        l.m = p.m;
        return l;
    };
    s.argument = [&](std::uint64_t id) {
        const Parts p = decode(id);
        return BigInt(U[p.u] * rho_pow[static_cast<std::size_t>(p.m)] - (static_cast<long>(p.d2) - static_cast<long>(p.d3)));
    };
    std::vector<Step3Scratch> scratch;
    for (unsigned w = 0; w < std::max(1u, opt.workers); ++w) scratch.emplace_back(t.bits);
    const long q_bits = static_cast<long>(bit_length(t.q.back()));
    // mu3 = mu2 + m tau + log1p(-c / (U rho^m)) / log alpha with c = d2 - d3.
    s.fast = [&](std::uint64_t id, unsigned w) -> std::optional<std::pair<std::size_t, double>> {
        const Parts p = decode(id);
        Step3Scratch& z = scratch[w];
        const long c = static_cast<long>(p.d2) - static_cast<long>(p.d3);
        const auto m = static_cast<std::size_t>(p.m);
        if (c != 0) z.set_delta(c, U_real[p.u], rho_pow_real[m], t.log_alpha, q_bits);
        for (std::size_t k = 0; k < t.q.size(); ++k) {
            const auto verdict = z.epsilon(mu2_frac[p.u][k], t.tau_frac[k], static_cast<unsigned long>(p.m),
                                           c != 0, t.q[k], t.m_dist[k]);
            if (verdict.positive) return std::make_pair(k, verdict.lower);
            if (!verdict.negative) return std::nullopt;
        }
        return std::nullopt;
    };
    return run_sweep(s, tc, opt);
}

ReductionSummary full_reduction(unsigned rho, const ReductionOptions& opt) {
    const TauContext ctx = make_tau_context(rho, opt);
    ReductionSummary sum;
    sum.rho = rho;
    sum.steps.push_back(step1(rho, opt, &ctx));
    sum.ell_max = sum.steps.back().bound;
    sum.steps.push_back(step2(rho, sum.ell_max, opt, &ctx));
    sum.m_max = sum.steps.back().bound;
    sum.steps.push_back(step3(rho, sum.ell_max, sum.m_max, opt, &ctx));
    sum.n_max = sum.steps.back().bound;
    return sum;
}

} // namespace narep
