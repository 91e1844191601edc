#pragma once

// Exact enumeration of the Egyptian-fraction sum sets E_N and reachable-set
// counts r_i along chains of denominators.

#include "efrac/arith.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace efrac {

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{8} << 30;  // 8 GiB

/// E_N = { sum_{k<=N} t_k/k : t in {0,1}^N }, stored as the sorted distinct
/// numerators over the common denominator lcm(1..N).
class EgyptianSet {
public:
    /// E_0 = {0}.
    EgyptianSet() = default;

    std::uint64_t n() const noexcept { return n_; }
    /// Common denominator lcm(1..n).
    std::uint64_t scale() const noexcept { return scale_; }
    std::size_t size() const noexcept { return scaled_.size(); }
    std::span<const std::uint64_t> scaled_elements() const noexcept { return scaled_; }
    Fraction element(std::size_t i) const;
    bool contains(const Fraction& x) const;

    /// E_{n+1} = E_n u (E_n + 1/(n+1)). Throws ResourceError naming the
    /// failing index if the budget or the 64-bit numerator range is exceeded.
    void extend(std::uint64_t memory_budget = kDefaultMemoryBudget);

private:
    std::uint64_t n_ = 0;
    std::uint64_t scale_ = 1;
    std::vector<std::uint64_t> scaled_{0};
};

/// #E_1, ..., #E_max_n.
std::vector<std::uint64_t> enumerate_egyptian(std::uint64_t max_n,
                                              std::uint64_t memory_budget = kDefaultMemoryBudget);

/// Sorted divisors of a modulus together with their prefix lcms.
struct DivisorChain {
    FactoredInteger modulus_factored;
    Natural modulus;
    std::vector<Natural> divisors;    ///< a_1 < ... < a_l
    std::vector<Natural> prefix_lcm;  ///< L_i = lcm(a_1..a_i)

    static DivisorChain of(const FactoredInteger& m);
    std::size_t size() const noexcept { return divisors.size(); }
    /// #a_i for the 1-based prefix index i.
    static std::size_t prefix_card(std::size_t i) noexcept { return i; }
};

/// R_i scaled by L_i: bit j set iff j/L_i is a subset sum of 1/a_1..1/a_i.
class ReachableSet {
public:
    /// Empty chain: R = {0} at scale 1.
    ReachableSet();

    /// Incorporate the next denominator: stretch to lcm(L, a), then OR with
    /// the set shifted by lcm(L, a)/a.
    void add(std::uint64_t a, std::uint64_t memory_budget = kDefaultMemoryBudget);

    std::uint64_t scale() const noexcept { return scale_; }
    /// Number of bit positions, 1 + sum L/a_k.
    std::uint64_t length() const noexcept { return length_; }
    std::uint64_t count() const noexcept { return count_; }
    bool test(std::uint64_t j) const noexcept;
    std::uint64_t highest_set_bit() const noexcept;

    /// Rescale by an integer factor: bit j moves to bit j*factor.
    void stretch(std::uint64_t factor, std::uint64_t memory_budget = kDefaultMemoryBudget);
    /// bits |= bits << shift, growing the vector by shift.
    void shift_or(std::uint64_t shift, std::uint64_t memory_budget = kDefaultMemoryBudget);

private:
    void resize_bits(std::uint64_t new_length, std::uint64_t memory_budget);
    void recount();

    std::uint64_t scale_ = 1;
    std::uint64_t length_ = 1;
    std::uint64_t count_ = 1;
    std::vector<std::uint64_t> words_;
};

/// r_1..r_l for the prefixes of a strictly increasing list of denominators.
/// Throws StructuralError for unsorted or zero input and ResourceError
/// (naming the prefix index) when a bit vector would exceed the budget.
std::vector<Natural> chain_counts(std::span<const std::uint64_t> sorted_elements,
                                  std::uint64_t memory_budget = kDefaultMemoryBudget);
std::vector<Natural> chain_counts(const DivisorChain& chain,
                                  std::uint64_t memory_budget = kDefaultMemoryBudget);

struct FigureRow {
    std::uint64_t n;
    std::uint64_t card;
    double log_card_over_n;
    std::optional<double> log_card_over_n_over_log_n;  ///< absent at n = 1
};

std::vector<FigureRow> sum_set_stats(std::uint64_t max_n, std::uint64_t memory_budget = kDefaultMemoryBudget);

struct SignedCheckRow {
    std::uint64_t n;
    std::uint64_t signed_card;     ///< #S_N by direct sign-vector enumeration
    std::uint64_t egyptian_card;   ///< #E_N from the recurrence
    bool matches() const noexcept { return signed_card == egyptian_card; }
};

inline constexpr std::uint64_t kSignedEnumerationCap = 24;

/// Independently enumerates S_N = { sum s_n/n : s in {-1,+1}^N } for each
/// N <= max_n and compares with #E_N. max_n is capped at kSignedEnumerationCap.
std::vector<SignedCheckRow> signed_set_cardinality_check(std::uint64_t max_n);

}  // namespace efrac
