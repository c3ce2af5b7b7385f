// narep: Narayana numbers that are concatenations of three repdigits.

#include <cctype>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "narep/commands.hpp"
#include "narep/errors.hpp"

namespace {

// Accepts plain integers and the shorthand <digits>e<exponent>, e.g. 2e51.
narep::BigInt parse_big(const std::string& text) {
    const auto e = text.find_first_of("eE");
    auto digits = [&](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    if (e == std::string::npos) {
        if (!digits(text)) throw narep::ConfigError("--big-m: not an integer: " + text);
        return narep::BigInt(text);
    }
    const std::string mant = text.substr(0, e);
    const std::string exp = text.substr(e + 1);
    if (!digits(mant) || !digits(exp) || exp.size() > 4) throw narep::ConfigError("--big-m: cannot parse " + text);
    return narep::BigInt(mant) * narep::pow_ui(10, std::stoul(exp));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Narayana numbers as concatenations of three repdigits: search, bounds, reduction, verification"};
    app.require_subcommand(1);

    narep::RunConfig cfg;
    std::string format = "table";
    std::string big_m;
    long precision = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--base-min", cfg.base_min, "smallest base")->capture_default_str();
        sub->add_option("--base-max", cfg.base_max, "largest base")->capture_default_str();
        sub->add_option("--n-max", cfg.n_max, "largest sequence index searched")->capture_default_str();
        sub->add_option("--precision", precision, "working precision in bits (default $NAREP_PRECISION or 1024)");
        sub->add_option("--big-m", big_m, "bound M on the integer coefficient (default 2e51)");
        sub->add_flag("--ordering", cfg.enforce_ordering, "only accept block lengths k <= m <= ell");
        sub->add_option("--format", format, "table, csv or json")->capture_default_str();
        sub->add_option("--workers", cfg.parallel_workers, "worker threads")->capture_default_str();
        sub->add_flag("--strict-paper", cfg.strict_paper, "restrict d2 and d3 to 1..rho-1 in reduction steps 2 and 3");
    };

    std::int64_t seq_from = 0;
    std::int64_t seq_to = 0;
    auto* seq = app.add_subcommand("seq", "print N_from .. N_to");
    seq->add_option("from", seq_from)->required();
    seq->add_option("to", seq_to)->required();
    add_common(seq);

    auto* search = app.add_subcommand("search", "list every N_n with a three-block representation");
    add_common(search);

    unsigned rho = 2;
    auto* bound = app.add_subcommand("bound", "initial bound on n from linear forms in logarithms");
    bound->add_option("--rho", rho, "base")->required();
    add_common(bound);

    std::string step = "all";
    long ell_max = 0;
    long m_max = 0;
    auto* reduce = app.add_subcommand("reduce", "continued-fraction reduction of the bounds");
    reduce->add_option("--rho", rho, "base")->required();
    reduce->add_option("--step", step, "1, 2, 3 or all")->capture_default_str();
    reduce->add_option("--ell-max", ell_max, "ell range for steps 2 and 3 (default: from step 1)");
    reduce->add_option("--m-max", m_max, "m range for step 3 (default: from step 2)");
    add_common(reduce);

    auto* verify = app.add_subcommand("verify", "reduce, search and compare with the known solution list");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return narep::kExitUsage;
    }

    try {
        cfg.output_format = narep::parse_format(format);
        cfg.precision_bits = precision > 0 ? precision : narep::default_precision();
        if (!big_m.empty()) cfg.M = parse_big(big_m);

        if (*seq) return narep::cmd_seq(seq_from, seq_to, cfg, std::cout);
        if (*search) return narep::cmd_search(cfg, std::cout);
        if (*bound) return narep::cmd_bound(rho, cfg, std::cout);
        if (*reduce) return narep::cmd_reduce(rho, step, ell_max, m_max, cfg, std::cout);
        if (*verify) return narep::cmd_verify(cfg, std::cout);
    } catch (const narep::ConfigError& e) {
        std::cerr << "narep: " << e.what() << '\n';
        return narep::kExitUsage;
    } catch (const narep::IndexOutOfRange& e) {
        std::cerr << "narep: " << e.what() << '\n';
        return narep::kExitUsage;
    } catch (const narep::EpsilonNeverPositive& e) {
        std::cerr << "narep: " << e.what() << '\n';
        return narep::kExitReductionFailed;
    } catch (const std::exception& e) {
        std::cerr << "narep: " << e.what() << '\n';
        return narep::kExitUsage;
    }
    return narep::kExitUsage;
}
