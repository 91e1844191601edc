#include "efrac/subsetsum.hpp"

#include "efrac/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace efrac {
namespace {

using u128 = unsigned __int128;

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, const char* what) {
    const std::uint64_t g = std::gcd(a, b);
    const u128 l = static_cast<u128>(a / g) * b;
    if (l > UINT64_MAX) throw ResourceError(std::string(what) + ": scale exceeds 64 bits");
    return static_cast<std::uint64_t>(l);
}

std::uint64_t words_for(std::uint64_t bits) { return (bits + 63) / 64; }

void check_budget(std::uint64_t bytes, std::uint64_t budget, const std::string& what) {
    if (bytes > budget) {
        throw ResourceError(what + " needs " + std::to_string(bytes) + " bytes, memory budget is " +
                            std::to_string(budget));
    }
}

}  // namespace

Fraction EgyptianSet::element(std::size_t i) const {
    return Fraction(Natural(scaled_.at(i)).mpz(), Natural(scale_).mpz());
}

bool EgyptianSet::contains(const Fraction& x) const {
    if (x.sign() < 0) return false;
    const Fraction scaled = x * Fraction(Natural(scale_));
    if (scaled.den() != 1) return false;
    const Natural numer(scaled.num());
    if (!numer.fits_u64()) return false;
    return std::binary_search(scaled_.begin(), scaled_.end(), numer.to_u64());
}

void EgyptianSet::extend(std::uint64_t memory_budget) {
    const std::uint64_t next = n_ + 1;
    const std::string where = "E_N enumeration at N=" + std::to_string(next);
    const std::uint64_t new_scale = checked_lcm(scale_, next, where.c_str());
    const std::uint64_t factor = new_scale / scale_;
    const std::uint64_t shift = new_scale / next;

    const u128 top = static_cast<u128>(scaled_.back()) * factor + shift;
    if (top > UINT64_MAX) throw ResourceError(where + ": numerators exceed 64 bits");
    check_budget(3 * scaled_.size() * sizeof(std::uint64_t), memory_budget, where);

    if (factor != 1) {
        for (auto& v : scaled_) v *= factor;
    }
    std::vector<std::uint64_t> out;
    out.reserve(2 * scaled_.size());
    // merge A and A + shift, both sorted, dropping duplicates
    std::size_t i = 0;
    std::size_t j = 0;
    const std::size_t len = scaled_.size();
    while (i < len || j < len) {
        std::uint64_t v;
        if (j == len || (i < len && scaled_[i] <= scaled_[j] + shift)) {
            v = scaled_[i++];
        } else {
            v = scaled_[j++] + shift;
        }
        if (out.empty() || out.back() != v) out.push_back(v);
    }
    out.shrink_to_fit();
    scaled_ = std::move(out);
    scale_ = new_scale;
    n_ = next;
}

std::vector<std::uint64_t> enumerate_egyptian(std::uint64_t max_n, std::uint64_t memory_budget) {
    if (max_n == 0) throw StructuralError("enumerate_egyptian: max_n must be >= 1");
    std::vector<std::uint64_t> cards;
    cards.reserve(max_n);
    EgyptianSet set;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        set.extend(memory_budget);
        cards.push_back(set.size());
    }
    return cards;
}

DivisorChain DivisorChain::of(const FactoredInteger& m) {
    DivisorChain c;
    c.modulus_factored = m;
    c.modulus = m.value();
    c.divisors = divisors_sorted(m);
    c.prefix_lcm.reserve(c.divisors.size());
    Natural l(1);
    for (const auto& d : c.divisors) {
        l = lcm(l, d);
        c.prefix_lcm.push_back(l);
    }
    return c;
}

ReachableSet::ReachableSet() : words_(1, 1) {}

bool ReachableSet::test(std::uint64_t j) const noexcept {
    if (j >= length_) return false;
    return (words_[j / 64] >> (j % 64)) & 1U;
}

std::uint64_t ReachableSet::highest_set_bit() const noexcept {
    for (std::size_t w = words_.size(); w-- > 0;) {
        if (words_[w]) return w * 64 + 63 - static_cast<std::uint64_t>(std::countl_zero(words_[w]));
    }
    return 0;
}

void ReachableSet::resize_bits(std::uint64_t new_length, std::uint64_t memory_budget) {
    check_budget(words_for(new_length) * 8, memory_budget, "reachable set of " + std::to_string(new_length) + " bits");
    words_.resize(words_for(new_length), 0);
    length_ = new_length;
}

void ReachableSet::recount() {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    count_ = c;
}

void ReachableSet::stretch(std::uint64_t factor, std::uint64_t memory_budget) {
    if (factor == 0) throw StructuralError("stretch factor must be positive");
    if (factor == 1) return;
    const u128 wide = static_cast<u128>(length_ - 1) * factor + 1;
    if (wide > UINT64_MAX / 2) throw ResourceError("reachable set stretch overflows");
    const auto new_length = static_cast<std::uint64_t>(wide);
    check_budget((words_for(new_length) + words_.size()) * 8, memory_budget,
                 "reachable set stretch to " + std::to_string(new_length) + " bits");
    std::vector<std::uint64_t> out(words_for(new_length), 0);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            const std::uint64_t j = w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
            bits &= bits - 1;
            const std::uint64_t t = j * factor;
            out[t / 64] |= std::uint64_t{1} << (t % 64);
        }
    }
    words_ = std::move(out);
    length_ = new_length;
    scale_ *= factor;
}

void ReachableSet::shift_or(std::uint64_t shift, std::uint64_t memory_budget) {
    if (shift == 0) return;
    if (shift > UINT64_MAX / 2 - length_) throw ResourceError("reachable set length overflows");
    resize_bits(length_ + shift, memory_budget);
    const std::uint64_t q = shift / 64;
    const unsigned r = shift % 64;
    const std::uint64_t n = words_.size();
    // descending, so every source word read is still the old value
    for (std::uint64_t w = n; w-- > q;) {
        std::uint64_t v = words_[w - q] << r;
        if (r && w >= q + 1) v |= words_[w - q - 1] >> (64 - r);
        words_[w] |= v;
    }
    recount();
}

void ReachableSet::add(std::uint64_t a, std::uint64_t memory_budget) {
    if (a == 0) throw StructuralError("denominators must be positive");
    const std::uint64_t new_scale = checked_lcm(scale_, a, "reachable set");
    stretch(new_scale / scale_, memory_budget);
    shift_or(new_scale / a, memory_budget);
}

std::vector<Natural> chain_counts(std::span<const std::uint64_t> sorted_elements, std::uint64_t memory_budget) {
    for (std::size_t i = 0; i < sorted_elements.size(); ++i) {
        if (sorted_elements[i] == 0 || (i > 0 && sorted_elements[i] <= sorted_elements[i - 1])) {
            throw StructuralError("chain elements must be positive and strictly increasing");
        }
    }
    std::vector<Natural> counts;
    counts.reserve(sorted_elements.size());
    ReachableSet reach;
    for (std::size_t i = 0; i < sorted_elements.size(); ++i) {
        try {
            reach.add(sorted_elements[i], memory_budget);
        } catch (const ResourceError& e) {
            throw ResourceError("chain prefix " + std::to_string(i + 1) + ": " + e.what());
        }
        counts.emplace_back(reach.count());
    }
    return counts;
}

std::vector<Natural> chain_counts(const DivisorChain& chain, std::uint64_t memory_budget) {
    if (!chain.modulus.fits_u64()) {
        throw ResourceError("modulus " + chain.modulus.str() + " is far beyond any bit-vector budget");
    }
    std::vector<std::uint64_t> elems;
    elems.reserve(chain.size());
    for (const auto& d : chain.divisors) elems.push_back(d.to_u64());
    return chain_counts(elems, memory_budget);
}

std::vector<FigureRow> sum_set_stats(std::uint64_t max_n, std::uint64_t memory_budget) {
    const auto cards = enumerate_egyptian(max_n, memory_budget);
    std::vector<FigureRow> rows;
    rows.reserve(cards.size());
    for (std::size_t i = 0; i < cards.size(); ++i) {
        const auto n = static_cast<double>(i + 1);
        const double lc = std::log(static_cast<double>(cards[i]));
        FigureRow row{i + 1, cards[i], lc / n, std::nullopt};
        if (i + 1 >= 2) row.log_card_over_n_over_log_n = lc / (n / std::log(n));
        rows.push_back(row);
    }
    return rows;
}

std::vector<SignedCheckRow> signed_set_cardinality_check(std::uint64_t max_n) {
    if (max_n == 0 || max_n > kSignedEnumerationCap) {
        throw StructuralError("signed enumeration supports 1 <= N <= " + std::to_string(kSignedEnumerationCap));
    }
    const auto egyptian = enumerate_egyptian(max_n);
    std::vector<SignedCheckRow> rows;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        const std::uint64_t d = lcm_range(n).to_u64();
        std::vector<std::int64_t> weight(n);
        std::int64_t sum = 0;
        for (std::uint64_t k = 1; k <= n; ++k) {
            weight[k - 1] = static_cast<std::int64_t>(d / k);
            sum -= weight[k - 1];
        }
        // Gray-code walk over all sign vectors, starting from all -1
        std::vector<std::int64_t> sums(std::size_t{1} << n);
        std::uint64_t signs = 0;
        sums[0] = sum;
        for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
            const int b = std::countr_zero(step);
            signs ^= std::uint64_t{1} << b;
            sum += ((signs >> b) & 1U) ? 2 * weight[b] : -2 * weight[b];
            sums[step] = sum;
        }
        std::sort(sums.begin(), sums.end());
        const auto distinct = static_cast<std::uint64_t>(std::unique(sums.begin(), sums.end()) - sums.begin());
        rows.push_back({n, distinct, egyptian[n - 1]});
    }
    return rows;
}

}  // namespace efrac
