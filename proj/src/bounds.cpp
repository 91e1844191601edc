#include "efrac/bounds.hpp"

#include "efrac/density.hpp"
#include "efrac/errors.hpp"
#include "efrac/parallel.hpp"

#include <algorithm>
#include <map>

namespace efrac {
namespace {

unsigned working_bits(unsigned precision_bits, std::size_t terms) {
    return precision_bits + 32 + static_cast<unsigned>(Natural(terms).bit_length());
}

void check_sorted_set(std::span<const std::uint64_t> a) {
    if (a.empty()) throw StructuralError("sets in a chain must be nonempty");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0 || (i && a[i] <= a[i - 1])) {
            throw StructuralError("sets must be given as strictly increasing positive integers");
        }
    }
}

void check_count(const Natural& r, std::size_t card) {
    if (r.is_zero() || r > (Natural(1) << card)) {
        throw StructuralError("invalid count r = " + r.str() + " for a set of " + std::to_string(card) +
                              " elements (need 1 <= r <= 2^" + std::to_string(card) + ")");
    }
}

Fraction recip_gap(const Natural& a, const Natural* next) {
    Fraction c = Fraction::ratio(Natural(1), a);
    if (next) c -= Fraction::ratio(Natural(1), *next);
    return c;
}

BoundReport finish(BoundMethod method, Natural modulus, Fraction delta, const DyadicInterval& value,
                   unsigned precision_bits, std::vector<Provenance> prov) {
    return BoundReport{method,        std::move(modulus),          std::nullopt, std::move(delta),
                       value.rounded(precision_bits), precision_bits, std::move(prov)};
}

}  // namespace

std::string to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::SingleSet: return "single-set";
        case BoundMethod::GeneralChain: return "general-chain";
        case BoundMethod::FullDivisor: return "full-divisor";
        case BoundMethod::Mixed: return "mixed";
    }
    return "?";
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "exact";
        case Provenance::LemmaA: return "lemmaA";
        case Provenance::Lifted: return "lifted";
    }
    return "?";
}

Fraction single_set_coefficient(std::span<const std::uint64_t> a) {
    check_sorted_set(a);
    const Fraction delta = delta_from_profile(profile_from_set(a));
    return delta / Fraction(Natural(a.back()));
}

BoundReport general_chain_bound(std::span<const std::vector<std::uint64_t>> chain_sets,
                                std::span<const Natural> r, unsigned precision_bits) {
    if (chain_sets.empty()) throw StructuralError("chain must contain at least one set");
    if (chain_sets.size() != r.size()) throw StructuralError("one count per chain set is required");
    for (std::size_t i = 0; i < chain_sets.size(); ++i) {
        check_sorted_set(chain_sets[i]);
        check_count(r[i], chain_sets[i].size());
        if (i) {
            const auto& prev = chain_sets[i - 1];
            const auto& cur = chain_sets[i];
            if (cur.size() <= prev.size() || !std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) {
                throw StructuralError("chain sets must be strictly nested");
            }
        }
    }
    const auto& top = chain_sets.back();
    const ValuationProfile profile = profile_from_set(top);
    const Fraction delta = delta_from_profile(profile);

    const unsigned wp = working_bits(precision_bits, chain_sets.size());
    const DyadicInterval ln2 = log2_interval(wp);
    DyadicInterval sum = DyadicInterval::zero(wp);
    for (std::size_t i = 0; i < chain_sets.size(); ++i) {
        const Natural max_i(chain_sets[i].back());
        const Natural max_next = i + 1 < chain_sets.size() ? Natural(chain_sets[i + 1].back()) : Natural(0);
        const Fraction c = recip_gap(max_i, i + 1 < chain_sets.size() ? &max_next : nullptr);
        // log(2^{#a_i} / r_i) >= 0
        const DyadicInterval gap = ln2.times(chain_sets[i].size()) - log_interval(r[i], wp);
        sum += gap.scaled(c);
    }
    const DyadicInterval value = ln2 - sum.scaled(delta);
    const BoundMethod method = chain_sets.size() == 1 ? BoundMethod::SingleSet : BoundMethod::GeneralChain;
    return finish(method, profile.modulus().value(), delta, value, precision_bits,
                  std::vector<Provenance>(r.size(), Provenance::Exact));
}

BoundReport single_set_bound(std::span<const std::uint64_t> a, const Natural& r, unsigned precision_bits) {
    check_sorted_set(a);
    const std::vector<std::vector<std::uint64_t>> sets{{a.begin(), a.end()}};
    const std::vector<Natural> counts{r};
    return general_chain_bound(sets, counts, precision_bits);
}

BoundReport full_divisor_bound(const DivisorChain& chain, std::span<const CountEstimate> r,
                               unsigned precision_bits, unsigned workers) {
    const std::size_t len = chain.size();
    if (r.size() != len) {
        throw StructuralError("expected " + std::to_string(len) + " counts, got " + std::to_string(r.size()));
    }
    const unsigned wp = working_bits(precision_bits, len);
    const DyadicInterval ln2 = log2_interval(wp);

    // logs of repeated bases (lifted estimates share them) are computed once
    std::map<Natural, DyadicInterval> base_logs;
    for (const auto& e : r) {
        if (e.base.is_zero()) throw StructuralError("counts must be positive");
        if (e.provenance == Provenance::Lifted) base_logs.emplace(e.base, DyadicInterval::zero(wp));
    }
    for (auto& [base, iv] : base_logs) iv = log_interval(base, wp);

    std::vector<DyadicInterval> terms(len, DyadicInterval::zero(wp));
    parallel_for(len, workers, [&](std::size_t i) {
        const auto& e = r[i];
        check_count(e.value(), i + 1);
        const auto cached = base_logs.find(e.base);
        DyadicInterval lg = cached != base_logs.end() ? cached->second : log_interval(e.base, wp);
        if (e.shift) lg += ln2.times(e.shift);
        const Fraction c = recip_gap(chain.divisors[i], i + 1 < len ? &chain.divisors[i + 1] : nullptr);
        terms[i] = lg.scaled(c);
    });
    DyadicInterval sum = DyadicInterval::zero(wp);
    for (const auto& t : terms) sum += t;

    const Fraction delta = delta_from_modulus(chain.modulus_factored);
    std::vector<Provenance> prov;
    prov.reserve(len);
    for (const auto& e : r) prov.push_back(e.provenance);
    return finish(BoundMethod::FullDivisor, chain.modulus, delta, sum.scaled(delta), precision_bits, std::move(prov));
}

BoundReport full_divisor_bound(const FactoredInteger& m, std::span<const Natural> r, unsigned precision_bits) {
    const DivisorChain chain = DivisorChain::of(m);
    if (r.size() != chain.size()) {
        throw StructuralError("expected " + std::to_string(chain.size()) + " counts (one per divisor of " +
                              chain.modulus.str() + "), got " + std::to_string(r.size()));
    }
    std::vector<CountEstimate> est;
    est.reserve(r.size());
    for (const auto& v : r) est.push_back({v, 0, Provenance::Exact});
    return full_divisor_bound(chain, est, precision_bits);
}

std::vector<Natural> lemma_a_bounds(const DivisorChain& chain) {
    // L_i sum_{k<=i} 1/a_k = L_i T_i / M with T_i = sum_{k<=i} M/a_k
    std::vector<Natural> out;
    out.reserve(chain.size());
    Natural t(0);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        t += divide_exact(chain.modulus, chain.divisors[i]);
        out.push_back(divide_exact(chain.prefix_lcm[i] * t, chain.modulus) + Natural(1));
    }
    return out;
}

Natural lemma_a_bound(const DivisorChain& chain, std::size_t i) {
    if (i == 0 || i > chain.size()) throw StructuralError("prefix index out of range");
    Natural t(0);
    for (std::size_t k = 0; k < i; ++k) t += divide_exact(chain.prefix_lcm[i - 1], chain.divisors[k]);
    return t + Natural(1);
}

std::vector<CountEstimate> mixed_estimates(const DivisorChain& chain, const DivisorChain& exact_chain,
                                           std::span<const Natural> exact_counts, LiftSelection selection) {
    if (!divides(exact_chain.modulus, chain.modulus)) {
        throw StructuralError("exact modulus " + exact_chain.modulus.str() + " does not divide " + chain.modulus.str());
    }
    if (exact_counts.size() != exact_chain.size()) {
        throw StructuralError("expected " + std::to_string(exact_chain.size()) + " exact counts, got " +
                              std::to_string(exact_counts.size()));
    }
    const auto lemma_a = lemma_a_bounds(chain);
    const auto& small = exact_chain.divisors;
    std::vector<CountEstimate> out;
    out.reserve(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Natural& a = chain.divisors[i];
        std::size_t j;  // 1-based index of the selected a'_j
        if (selection == LiftSelection::LargestNotExceeding) {
            j = static_cast<std::size_t>(std::upper_bound(small.begin(), small.end(), a) - small.begin());
        } else {
            const Natural g = gcd(a, exact_chain.modulus);
            j = static_cast<std::size_t>(std::lower_bound(small.begin(), small.end(), g) - small.begin()) + 1;
        }
        const std::uint64_t shift = i + 1 - j;
        const Natural& lifted_base = exact_counts[j - 1];
        if (shift == 0) {
            out.push_back({lifted_base, 0, Provenance::Exact});
            continue;
        }
        const bool lemma_smaller =
            lemma_a[i].bit_length() < lifted_base.bit_length() + shift - 1 || lemma_a[i] < (lifted_base << shift);
        if (lemma_smaller) {
            out.push_back({lemma_a[i], 0, Provenance::LemmaA});
        } else {
            out.push_back({lifted_base, shift, Provenance::Lifted});
        }
    }
    return out;
}

BoundReport mixed_bound(const FactoredInteger& m, const FactoredInteger& m_exact,
                        std::span<const Natural> exact_counts, const MixedOptions& options) {
    if (!m_exact.divides(m)) {
        throw StructuralError("exact modulus " + m_exact.value().str() + " does not divide " + m.value().str());
    }
    const DivisorChain chain = DivisorChain::of(m);
    const DivisorChain exact_chain = DivisorChain::of(m_exact);
    const auto est = mixed_estimates(chain, exact_chain, exact_counts, options.selection);
    BoundReport rep = full_divisor_bound(chain, est, options.precision_bits, options.workers);
    rep.method = BoundMethod::Mixed;
    rep.exact_modulus = exact_chain.modulus;
    return rep;
}

}  // namespace efrac
