#include "efrac/cli.hpp"

#include "efrac/bounds.hpp"
#include "efrac/cache.hpp"
#include "efrac/config.hpp"
#include "efrac/density.hpp"
#include "efrac/errors.hpp"
#include "efrac/report.hpp"
#include "efrac/subsetsum.hpp"
#include "efrac/uset.hpp"

#include <CLI11.hpp>

#include <optional>
#include <sstream>

namespace efrac {
namespace {

struct GlobalFlags {
    std::optional<std::string> memory_budget;
    std::optional<std::string> cache_dir;
    std::optional<std::string> format;
    std::optional<unsigned> workers;
    std::optional<unsigned> precision;
};

RunConfig resolve_config(const GlobalFlags& flags) {
    RunConfig cfg = config_from_environment();
    std::map<std::string, std::string> overrides;
    if (flags.memory_budget) overrides["memory_budget"] = *flags.memory_budget;
    if (flags.cache_dir) overrides["cache_dir"] = *flags.cache_dir;
    if (flags.format) overrides["format"] = *flags.format;
    if (flags.workers) overrides["workers"] = std::to_string(*flags.workers);
    if (flags.precision) overrides["log_precision_bits"] = std::to_string(*flags.precision);
    return apply_settings(cfg, overrides);
}

std::vector<std::uint64_t> parse_set(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(Natural::parse(tok).to_u64());
    std::sort(out.begin(), out.end());
    if (out.empty() || std::adjacent_find(out.begin(), out.end()) != out.end() || out.front() == 0) {
        throw StructuralError("--set must list distinct positive integers");
    }
    return out;
}

void write_estimate_cache(const RunConfig& cfg, const DivisorChain& chain, const DivisorChain& exact_chain,
                          const std::vector<CountEstimate>& est) {
    if (cfg.cache_dir.empty()) return;
    ChainCacheFile file{chain.modulus, {}};
    for (std::size_t i = 0; i < est.size(); ++i) {
        file.rows.push_back({i + 1, chain.divisors[i], est[i].value(), est[i].provenance});
    }
    file.write_atomic(cfg.cache_dir / ("mixed-" + chain.modulus.str() + "-" + exact_chain.modulus.str() + ".csv"));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Egyptian-fraction sum sets: exact counts and certified bounds for their growth", "efrac"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    app.add_option("--memory-budget", flags.memory_budget, "Memory budget in bytes (K/M/G suffixes allowed)");
    app.add_option("--cache-dir", flags.cache_dir, "Directory for chain-count caches (empty disables)");
    app.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--precision", flags.precision, "Fractional bits for certified logarithms (>= 64)");

    std::uint64_t max_n = 0;
    auto* enumerate = app.add_subcommand("enumerate", "#E_N for N = 1..max-n");
    enumerate->add_option("--max-n", max_n, "Largest N")->required()->check(CLI::PositiveNumber);

    auto* figure = app.add_subcommand("figure-data", "log(#E_N)/N and log(#E_N)/(N/log N)");
    figure->add_option("--max-n", max_n, "Largest N")->required()->check(CLI::PositiveNumber);

    std::string modulus_text;
    std::string exact_text;
    auto* chain_bound = app.add_subcommand("chain-bound", "Full-divisor bound from exact chain counts");
    chain_bound->add_option("--modulus", modulus_text, "M, e.g. 5040 or lcm:17")->required();

    std::string selection = "le";
    auto* mixed = app.add_subcommand("mixed-bound", "Bound mixing exact counts on divisors of M' with estimates");
    mixed->add_option("--modulus", modulus_text, "M")->required();
    mixed->add_option("--exact-modulus", exact_text, "M' dividing M")->required();
    mixed->add_option("--selection", selection, "Lifted divisor: le = largest a'_j <= a_i, div = largest dividing a_i")
        ->check(CLI::IsMember({"le", "div"}));

    std::string set_text;
    auto* set_bound = app.add_subcommand("set-bound", "Single-set bound for an explicit set");
    set_bound->add_option("--set", set_text, "Comma-separated set, e.g. 1,2,3,6")->required();

    std::uint64_t cap = 30;
    std::optional<std::uint64_t> rec_x;
    std::optional<std::uint64_t> rec_y;
    std::optional<unsigned> curve_k;
    auto* u_set = app.add_subcommand("u-set", "Certified members of U up to max-n");
    u_set->add_option("--max-n,--max", max_n, "Upper end x of U(x)")->required()->check(CLI::PositiveNumber);
    u_set->add_option("--cap", cap, "Decide every n <= cap exactly");
    u_set->add_option("--recursive-y", rec_y, "y for the recursive count bound");
    u_set->add_option("--recursive-x", rec_x, "x >= 3^y for the recursive count bound");
    u_set->add_option("--curve-k", curve_k, "Also emit per-N lower bounds and the k-th growth curve (k >= 3)");

    std::optional<std::uint64_t> empirical_x;
    auto* density = app.add_subcommand("density", "Natural density M/sigma(M) of the valuation set of M");
    density->add_option("--modulus", modulus_text, "M")->required();
    density->add_option("--empirical-x", empirical_x, "Also count members up to x");

    std::uint64_t max_m = 24;
    auto* gm = app.add_subcommand("gm-table", "d_m = lcm(1..m) and g_m = d_m H_m");
    gm->add_option("--max-m", max_m, "Largest m")->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store{"efrac"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig cfg = resolve_config(flags);
        const OutputFormat fmt = cfg.output_format;
        if (*enumerate) {
            out << render_enumerate(enumerate_egyptian(max_n, cfg.memory_budget_bytes), fmt);
        } else if (*figure) {
            out << render_figure(sum_set_stats(max_n, cfg.memory_budget_bytes), fmt);
        } else if (*chain_bound) {
            const FactoredInteger m = parse_modulus(modulus_text);
            const DivisorChain chain = DivisorChain::of(m);
            const auto counts = cached_chain_counts(chain, cfg);
            out << render_bound(full_divisor_bound(m, counts, cfg.log_precision_bits), fmt);
        } else if (*mixed) {
            const FactoredInteger m = parse_modulus(modulus_text);
            const FactoredInteger m_exact = parse_modulus(exact_text);
            if (!m_exact.divides(m)) {
                throw StructuralError("exact modulus " + m_exact.value().str() + " does not divide " + m.value().str());
            }
            const DivisorChain chain = DivisorChain::of(m);
            const DivisorChain exact_chain = DivisorChain::of(m_exact);
            const auto exact_counts = cached_chain_counts(exact_chain, cfg);
            const LiftSelection sel = selection == "div" ? LiftSelection::LargestDividing : LiftSelection::LargestNotExceeding;
            const auto est = mixed_estimates(chain, exact_chain, exact_counts, sel);
            write_estimate_cache(cfg, chain, exact_chain, est);
            BoundReport rep = full_divisor_bound(chain, est, cfg.log_precision_bits, cfg.workers);
            rep.method = BoundMethod::Mixed;
            rep.exact_modulus = exact_chain.modulus;
            out << render_bound(rep, fmt);
        } else if (*set_bound) {
            const auto set = parse_set(set_text);
            const auto counts = chain_counts(set, cfg.memory_budget_bytes);
            const auto rep = single_set_bound(set, counts.back(), cfg.log_precision_bits);
            out << render_set_bound(set, counts.back(), rep, fmt);
        } else if (*u_set) {
            if (cap > kExactDecisionCap) {
                throw ResourceError("--cap " + std::to_string(cap) + " exceeds the exhaustive limit " +
                                    std::to_string(kExactDecisionCap) + "; larger n are covered by certificates");
            }
            const UCount count = count_u(max_n, cap, cfg.workers, cfg.memory_budget_bytes);
            std::optional<std::int64_t> rec;
            if (rec_x || rec_y) {
                if (!rec_x || !rec_y) throw StructuralError("--recursive-x and --recursive-y go together");
                if (*rec_y > count.complete_up_to) {
                    throw StructuralError("--recursive-y must not exceed the exactly decided range (" +
                                          std::to_string(count.complete_up_to) + ")");
                }
                std::vector<std::uint64_t> u_y;
                for (const auto& c : count.members) {
                    if (c.n <= *rec_y) u_y.push_back(c.n);
                }
                rec = recursive_count_bound(*rec_x, *rec_y, u_y);
            }
            std::vector<LowerBoundRow> curve;
            if (curve_k) curve = lower_bound_report(max_n, *curve_k, cap, cfg.workers);
            out << render_u_set(count, rec, curve);
        } else if (*density) {
            const FactoredInteger m = parse_modulus(modulus_text);
            DensityRow row{m.value(), delta_from_modulus(m), empirical_x, std::nullopt};
            if (empirical_x) row.empirical = empirical_density(ValuationProfile::of_modulus(m), *empirical_x);
            out << render_density(row, fmt);
        } else if (*gm) {
            out << render_gm_table(g_m_table(max_m), fmt);
        }
    } catch (const ResourceError& e) {
        err << "efrac: resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const StructuralError& e) {
        err << "efrac: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "efrac: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace efrac
