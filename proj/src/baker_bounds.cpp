#include "narep/baker_bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "narep/hp_arith.hpp"

namespace narep {

namespace {

PrecisionReal dec(const char* text, long bits) { return PrecisionReal::from_decimal(text, bits); }
PrecisionReal num(long v, long bits) { return PrecisionReal::from_long(v, bits); }

PrecisionReal log_rho(unsigned rho, long bits) {
    if (rho < 2) throw BaseTooSmall("rho must be at least 2");
    return log(num(static_cast<long>(rho), bits));
}

PrecisionReal one_plus_log(const PrecisionReal& x) { return log(x).add(1); }

int log_rho_power(LinearForm which) { return static_cast<int>(which) + 1; }
int log_n_power(LinearForm which) { return static_cast<int>(which); }

PrecisionReal min_of(const PrecisionReal& a, const PrecisionReal& b) {
    if (mpfr_lessequal_p(a.hi(), b.lo())) return a;
    if (mpfr_lessequal_p(b.hi(), a.lo())) return b;
    // Overlapping enclosures: the minimum lies in [min lo, min hi].
    detail::Mpfr lo(std::max(a.precision_bits(), b.precision_bits()));
    detail::Mpfr hi(std::max(a.precision_bits(), b.precision_bits()));
    mpfr_min(lo.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(hi.get(), a.hi(), b.hi(), MPFR_RNDU);
    return PrecisionReal::from_endpoints(lo.get(), hi.get(), std::max(a.precision_bits(), b.precision_bits()));
}

} // namespace

PrecisionReal matveev_lower_bound(const MatveevInstance& inst) {
    if (inst.s < 1) throw InvalidInstance("matveev: s must be at least 1");
    if (inst.degree < 1) throw InvalidInstance("matveev: field degree must be at least 1");
    if (inst.A.size() != static_cast<std::size_t>(inst.s)) {
        throw InvalidInstance("matveev: expected " + std::to_string(inst.s) + " A-values");
    }
    const long bits = std::max<long>(inst.B.precision_bits(), 64);
    const PrecisionReal floor_a = dec("0.16", bits);
    for (const auto& a : inst.A) {
        if (mpfr_less_p(a.lo(), floor_a.lo())) throw InvalidInstance("matveev: A_i below 0.16");
    }
    if (mpfr_cmp_ui(inst.B.lo(), 3) < 0) throw InvalidInstance("matveev: B must be at least 3");

    const PrecisionReal s = num(inst.s, bits);
    const PrecisionReal d = num(inst.degree, bits);
    PrecisionReal value = dec("1.4", bits) * pow(num(30, bits), static_cast<unsigned long>(inst.s + 3));
    value *= pow(s, 4) * sqrt(s); // s^4.5
    value *= d * d * one_plus_log(d);
    value *= one_plus_log(inst.B);
    for (const auto& a : inst.A) value *= a;
    return -value;
}

PrecisionReal eta1_height_majorant(const LinearFormSpec& form, const PrecisionReal& n, long bits) {
    const PrecisionReal lr = log_rho(form.rho, bits);
    const PrecisionReal ln1 = one_plus_log(n.at_precision(bits));
    switch (form.which) {
    case LinearForm::Lambda1:
        // h(rho-1) + h(a) + h(d1) <= 2 log rho + (1/3) log 31 <= 4 log rho
        return lr.mul(4);
    case LinearForm::Lambda2:
        return dec("3.75e13", bits) * lr * lr * ln1;
    case LinearForm::Lambda3:
        return dec("1.4e27", bits) * pow(lr, 3) * ln1 * ln1;
    }
    throw std::invalid_argument("eta1_height_majorant: unknown form");
}

MatveevInstance matveev_instance(const LinearFormSpec& form, const PrecisionReal& n, long bits) {
    const PrecisionReal lr = log_rho(form.rho, bits);
    const PrecisionReal ln1 = one_plus_log(n.at_precision(bits));
    MatveevInstance inst;
    inst.s = 3;
    inst.degree = 3;
    inst.B = n.at_precision(bits);
    PrecisionReal a1(bits);
    switch (form.which) {
    case LinearForm::Lambda1:
        a1 = lr.mul(12);
        break;
    case LinearForm::Lambda2:
        a1 = dec("1.125e14", bits) * lr * lr * ln1;
        break;
    case LinearForm::Lambda3:
        a1 = dec("4.2e27", bits) * pow(lr, 3) * ln1 * ln1;
        break;
    }
    inst.A = {a1, log_alpha(bits), lr.mul(3)};
    return inst;
}

PrecisionReal form_coefficient(LinearForm which, long bits) {
    // Any admissible (rho, n) gives the same ratio; use rho = 2, n = 1000.
    const PrecisionReal n = num(1000, bits);
    const PrecisionReal bound = matveev_lower_bound(matveev_instance({which, 2}, n, bits));
    const PrecisionReal scale =
        pow(log_rho(2, bits), static_cast<unsigned long>(log_rho_power(which))) *
        pow(one_plus_log(n), static_cast<unsigned long>(log_n_power(which)));
    return -bound / scale;
}

PrecisionReal form_coefficient_ceiling(LinearForm which, long bits) {
    switch (which) {
    case LinearForm::Lambda1:
        return dec("3.73e13", bits);
    case LinearForm::Lambda2:
        return dec("3.49e26", bits);
    case LinearForm::Lambda3:
        return dec("1.31e40", bits);
    }
    throw std::invalid_argument("form_coefficient_ceiling: unknown form");
}

DigitCountBracket lemma2_digit_bounds(long n, unsigned rho) {
    if (n < 1) throw std::invalid_argument("lemma2_digit_bounds: n must be positive");
    const long bits = kBoundPrecision;
    const PrecisionReal la = log_alpha(bits);
    const PrecisionReal lr = log_rho(rho, bits);
    // S > (n log alpha - 1) / log rho
    const PrecisionReal lower = (la.mul(n).add(-1)) / lr;
    // S <= (n - 1) log alpha / log rho + 1
    const PrecisionReal upper = (la.mul(n - 1)) / lr;
    long s_min = floor_lower(lower).get_si() + 1;
    long s_max = floor_upper(upper).get_si() + 1;
    s_min = std::max(s_min, 1L);
    return {s_min, s_max};
}

PrecisionReal ell_bound(unsigned rho, const BigInt& n, long bits) {
    if (n < 3) throw std::invalid_argument("ell_bound: n must be at least 3");
    const PrecisionReal lr = log_rho(rho, bits);
    return dec("3.74e13", bits) * lr * one_plus_log(PrecisionReal::from_integer(n, bits));
}

PrecisionReal m_bound(unsigned rho, const BigInt& n, long bits) {
    if (n < 3) throw std::invalid_argument("m_bound: n must be at least 3");
    const PrecisionReal lr = log_rho(rho, bits);
    const PrecisionReal ln1 = one_plus_log(PrecisionReal::from_integer(n, bits));
    return dec("3.5e26", bits) * lr * lr * ln1 * ln1;
}

PrecisionReal resolve_recursive_bound(int r, const PrecisionReal& H) {
    if (r < 1) throw std::invalid_argument("resolve_recursive_bound: r must be at least 1");
    const long bits = H.precision_bits();
    const PrecisionReal threshold = pow(num(4L * r * r, bits), static_cast<unsigned long>(r));
    if (!certainly_less(threshold, H)) {
        throw HypothesisViolated("resolve_recursive_bound: requires H > (4r^2)^r = " + threshold.to_string(12));
    }
    return pow(num(2, bits), static_cast<unsigned long>(r)) * H * pow(log(H), static_cast<unsigned long>(r));
}

InitialBoundReport initial_n_bound(unsigned rho, long bits) {
    const PrecisionReal lr = log_rho(rho, bits);
    const PrecisionReal la = log_alpha(bits);

    InitialBoundReport rep{rho, PrecisionReal(bits), PrecisionReal(bits), PrecisionReal(bits), PrecisionReal(bits),
                           PrecisionReal(bits), PrecisionReal(bits), false, {}};
    auto note = [&](std::string name, const PrecisionReal& v) { rep.audit.push_back({std::move(name), v.upper_string(8)}); };
    auto note_flag = [&](std::string name, bool ok) { rep.audit.push_back({std::move(name), ok ? "holds" : "FAILS"}); };

    note("log alpha", la);
    note("log rho", lr);
    for (LinearForm f : {LinearForm::Lambda1, LinearForm::Lambda2, LinearForm::Lambda3}) {
        const PrecisionReal c = form_coefficient(f, bits);
        const std::string tag = "Lambda" + std::to_string(static_cast<int>(f));
        note(tag + " Matveev coefficient", c);
        note_flag(tag + " coefficient <= " + form_coefficient_ceiling(f, bits).to_string(3),
                  certainly_less(c, form_coefficient_ceiling(f, bits)));
    }

    // n log alpha - log 5 < 1.31e40 log^4 rho (1 + log n)^3 with 1 + log n < 2 log n
    // gives n < 8 * 1.31e40 / log alpha * log^4 rho log^3 n (+ lower-order term).
    const PrecisionReal h_const = dec("2.75e41", bits);
    const PrecisionReal derived = dec("1.31e40", bits).mul(8) / la;
    note("8 * 1.31e40 / log alpha", derived);
    note_flag("8 * 1.31e40 / log alpha <= 2.75e41", certainly_less(derived, h_const));

    rep.H = h_const * pow(lr, 4);
    note("H = 2.75e41 log^4 rho", rep.H);
    rep.lemma3_bound = resolve_recursive_bound(3, rep.H);
    note("8 H (log H)^3", rep.lemma3_bound);

    rep.log_check_lhs = log(h_const) + log(lr).mul(4);
    rep.log_check_rhs = lr.mul(136);
    rep.log_check_passed = certainly_less(rep.log_check_lhs, rep.log_check_rhs);
    note("log H = log 2.75e41 + 4 log log rho", rep.log_check_lhs);
    note("136 log rho", rep.log_check_rhs);
    note_flag("95.42 + 4 log log rho < 136 log rho", rep.log_check_passed);

    rep.cap = dec("5.6e48", bits) * pow(lr, 7);
    note("5.6e48 log^7 rho", rep.cap);
    const PrecisionReal cap_constant = h_const.mul(8) * pow(num(136, bits), 3);
    note("8 * 2.75e41 * 136^3", cap_constant);
    note_flag("8 * 2.75e41 * 136^3 <= 5.6e48", certainly_less(cap_constant, dec("5.6e48", bits)));

    rep.capped_bound = min_of(rep.lemma3_bound, rep.cap);
    note("capped bound", rep.capped_bound);
    return rep;
}

} // namespace narep
