#include "efrac/report.hpp"

#include "efrac/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <map>
#include <sstream>

namespace efrac {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr unsigned kTableDigits = 8;
constexpr unsigned kMachineDigits = 20;

std::string json_lines(const std::vector<ordered_json>& rows) {
    std::string out;
    for (const auto& r : rows) out += r.dump() + "\n";
    return out;
}

ordered_json bound_json(const BoundReport& rep) {
    ordered_json j;
    j["method"] = to_string(rep.method);
    j["modulus"] = rep.modulus.str();
    if (rep.exact_modulus) j["exact_modulus"] = rep.exact_modulus->str();
    j["delta_num"] = rep.delta.num().get_str();
    j["delta_den"] = rep.delta.den().get_str();
    j["bound"] = rep.bound_upper(kTableDigits);
    j["bound_hp"] = rep.bound_upper(kMachineDigits);
    j["precision_bits"] = rep.precision_bits;
    std::map<std::string, std::size_t> prov;
    for (auto p : rep.r_provenance) ++prov[to_string(p)];
    j["provenance"] = prov;
    return j;
}

// 2^k in decimal while short, as "2^k" beyond 256 bits.
std::string power_of_two(std::uint64_t k) {
    return k <= 256 ? (Natural(1) << k).str() : "2^" + std::to_string(k);
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

std::string render_enumerate(std::span<const std::uint64_t> cards, OutputFormat fmt) {
    if (fmt == OutputFormat::Json) {
        std::vector<ordered_json> rows;
        for (std::size_t i = 0; i < cards.size(); ++i) rows.push_back({{"n", i + 1}, {"card", cards[i]}});
        return json_lines(rows);
    }
    std::string out = "n,card\n";
    for (std::size_t i = 0; i < cards.size(); ++i) out += std::to_string(i + 1) + "," + std::to_string(cards[i]) + "\n";
    return out;
}

std::string render_figure(std::span<const FigureRow> rows, OutputFormat fmt) {
    if (fmt == OutputFormat::Json) {
        std::vector<ordered_json> out;
        for (const auto& r : rows) {
            ordered_json j{{"n", r.n}, {"card", r.card}, {"log_card_over_n", format_real(r.log_card_over_n)}};
            j["log_card_over_n_over_log_n"] =
                r.log_card_over_n_over_log_n ? ordered_json(format_real(*r.log_card_over_n_over_log_n)) : ordered_json();
            out.push_back(std::move(j));
        }
        return json_lines(out);
    }
    std::string out = "n,card,log_card_over_n,log_card_over_n_over_log_n\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.card) + "," + format_real(r.log_card_over_n) + ",";
        if (r.log_card_over_n_over_log_n) out += format_real(*r.log_card_over_n_over_log_n);
        out += "\n";
    }
    return out;
}

std::string render_bound(const BoundReport& rep, OutputFormat fmt) {
    if (fmt == OutputFormat::Json) return bound_json(rep).dump() + "\n";
    const std::string delta = rep.delta.num().get_str() + "," + rep.delta.den().get_str();
    const std::string bound = rep.bound_upper(kTableDigits) + "," + rep.bound_upper(kMachineDigits);
    if (rep.exact_modulus) {
        return "M,M_exact,delta_num,delta_den,bound,bound_hp\n" + rep.modulus.str() + "," + rep.exact_modulus->str() +
               "," + delta + "," + bound + "\n";
    }
    return "M,delta_num,delta_den,bound,bound_hp\n" + rep.modulus.str() + "," + delta + "," + bound + "\n";
}

std::string render_set_bound(std::span<const std::uint64_t> set, const Natural& r, const BoundReport& rep,
                             OutputFormat fmt) {
    const Fraction coef = single_set_coefficient(set);
    std::string joined;
    for (std::size_t i = 0; i < set.size(); ++i) joined += (i ? " " : "") + std::to_string(set[i]);
    if (fmt == OutputFormat::Json) {
        ordered_json j = bound_json(rep);
        j["set"] = std::vector<std::uint64_t>(set.begin(), set.end());
        j["r"] = r.str();
        j["coef"] = coef.str();
        return j.dump() + "\n";
    }
    return "set,r,coef_num,coef_den,bound,bound_hp\n" + joined + "," + r.str() + "," + coef.num().get_str() + "," +
           coef.den().get_str() + "," + rep.bound_upper(kTableDigits) + "," + rep.bound_upper(kMachineDigits) + "\n";
}

std::string render_gm_table(const GmTable& table, OutputFormat fmt) {
    if (fmt == OutputFormat::Json) {
        std::vector<ordered_json> rows;
        for (const auto& e : table.entries()) {
            rows.push_back({{"m", e.m}, {"d_m", e.d.str()}, {"g_m", e.g.str()}, {"g_below_3_pow_m", e.below_three_pow}});
        }
        return json_lines(rows);
    }
    std::string out = "m,d_m,g_m,g_below_3_pow_m\n";
    for (const auto& e : table.entries()) {
        out += std::to_string(e.m) + "," + e.d.str() + "," + e.g.str() + "," + (e.below_three_pow ? "true" : "false") + "\n";
    }
    return out;
}

std::string render_density(const DensityRow& row, OutputFormat fmt) {
    if (fmt == OutputFormat::Json) {
        ordered_json j{{"M", row.modulus.str()}, {"delta", row.delta.str()}};
        if (row.x) j["x"] = *row.x;
        if (row.empirical) j["empirical"] = row.empirical->str();
        return j.dump() + "\n";
    }
    std::string out = "M,delta_num,delta_den,x,empirical_num,empirical_den\n" + row.modulus.str() + "," +
                      row.delta.num().get_str() + "," + row.delta.den().get_str() + ",";
    if (row.x) out += std::to_string(*row.x);
    out += ",";
    if (row.empirical) out += row.empirical->num().get_str() + "," + row.empirical->den().get_str();
    else out += ",";
    return out + "\n";
}

std::string render_u_set(const UCount& count, std::optional<std::int64_t> recursive_bound,
                         std::span<const LowerBoundRow> curve) {
    std::string out;
    for (const auto& c : count.members) out += to_json_line(c) + "\n";
    for (const auto& r : curve) {
        ordered_json j{{"n", r.n}, {"u_count", r.u_count}, {"card_lower_bound", power_of_two(r.u_count)}};
        j["growth_curve"] = r.growth_curve ? ordered_json(format_real(*r.growth_curve)) : ordered_json();
        out += j.dump() + "\n";
    }
    ordered_json summary;
    summary["count"] = count.count;
    summary["card_lower_bound"] = power_of_two(count.count);
    summary["complete_up_to"] = count.complete_up_to;
    if (recursive_bound) summary["recursive_bound"] = *recursive_bound;
    out += ordered_json{{"summary", summary}}.dump() + "\n";
    return out;
}

FactoredInteger parse_modulus(const std::string& text) {
    if (text.empty()) throw StructuralError("empty modulus");
    std::map<std::uint64_t, unsigned> exps;
    auto merge = [&](const FactoredInteger& f) {
        for (const auto& [p, e] : f.factors()) exps[p] += e;
    };
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, '*')) {
        if (tok.rfind("lcm:", 0) == 0) {
            merge(lcm_range_factored(Natural::parse(tok.substr(4)).to_u64()));
        } else if (tok.rfind("lcm(1..", 0) == 0 && tok.back() == ')') {
            merge(lcm_range_factored(Natural::parse(tok.substr(7, tok.size() - 8)).to_u64()));
        } else if (const auto caret = tok.find('^'); caret != std::string::npos) {
            const Natural base = Natural::parse(tok.substr(0, caret));
            const auto e = Natural::parse(tok.substr(caret + 1)).to_u64();
            if (e > 4096) throw StructuralError("exponent too large in modulus '" + text + "'");
            merge(FactoredInteger::factor(pow(base, static_cast<unsigned>(e))));
        } else {
            merge(FactoredInteger::factor(Natural::parse(tok)));
        }
    }
    std::vector<PrimePower> f;
    for (const auto& [p, e] : exps) f.push_back({p, e});
    return FactoredInteger(std::move(f));
}

}  // namespace efrac
