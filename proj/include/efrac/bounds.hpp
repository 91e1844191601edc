#pragma once

// Certified upper bounds for the growth constant alpha = limsup log(#E_N)/N.
//
// Exact rationals carry delta and every coefficient; only logarithms are
// approximated, as outward-rounded dyadic intervals, so each reported
// bound is never below the value of the underlying expression.

#include "efrac/arith.hpp"
#include "efrac/certified_log.hpp"
#include "efrac/subsetsum.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace efrac {

inline constexpr unsigned kDefaultPrecisionBits = 64;

enum class BoundMethod { SingleSet, GeneralChain, FullDivisor, Mixed };
enum class Provenance { Exact, LemmaA, Lifted };

std::string to_string(BoundMethod m);
std::string to_string(Provenance p);

struct BoundReport {
    BoundMethod method;
    Natural modulus;
    std::optional<Natural> exact_modulus;
    Fraction delta;
    /// Encloses the evaluated expression at precision_bits fractional bits;
    /// enclosure.hi() is the certificate.
    DyadicInterval enclosure;
    unsigned precision_bits;
    std::vector<Provenance> r_provenance;

    /// Certified upper bound rounded up to `digits` decimals.
    std::string bound_upper(unsigned digits = 8) const {
        return decimal_round_up(enclosure.hi(), precision_bits, digits);
    }
    Fraction upper_value() const { return enclosure.hi_value(); }
};

/// r_i together with how it was obtained; the value is base * 2^shift.
struct CountEstimate {
    Natural base;
    std::uint64_t shift = 0;
    Provenance provenance = Provenance::Exact;

    Natural value() const { return base << shift; }
};

/// delta / max(a) for a single set, the coefficient of the l = 1 bound.
Fraction single_set_coefficient(std::span<const std::uint64_t> a);

/// log 2 - (delta / max a) log(2^{#a} / r). Throws StructuralError when r is
/// outside [1, 2^{#a}] or the set is not strictly increasing.
BoundReport single_set_bound(std::span<const std::uint64_t> a, const Natural& r,
                             unsigned precision_bits = kDefaultPrecisionBits);

/// log 2 - delta sum_i (1/max a_i - 1/max a_{i+1}) log(2^{#a_i} / r_i) for
/// strictly nested sets a_1 < ... < a_l (each given sorted), 1/max a_{l+1} = 0.
BoundReport general_chain_bound(std::span<const std::vector<std::uint64_t>> chain_sets,
                                std::span<const Natural> r,
                                unsigned precision_bits = kDefaultPrecisionBits);

/// delta sum_i (1/a_i - 1/a_{i+1}) log r_i over all divisors a_i of m.
BoundReport full_divisor_bound(const FactoredInteger& m, std::span<const Natural> r,
                               unsigned precision_bits = kDefaultPrecisionBits);

/// Same formula with estimated counts; used by the mixed pipeline.
BoundReport full_divisor_bound(const DivisorChain& chain, std::span<const CountEstimate> r,
                               unsigned precision_bits = kDefaultPrecisionBits, unsigned workers = 1);

/// 1 + L_i sum_{k<=i} 1/a_k for the 1-based prefix index i.
Natural lemma_a_bound(const DivisorChain& chain, std::size_t i);
/// lemma_a_bound for every prefix, in one pass.
std::vector<Natural> lemma_a_bounds(const DivisorChain& chain);

/// Which divisor a'_j of M' is lifted to estimate r_i.
enum class LiftSelection {
    /// Largest a'_j <= a_i. Reproduces the published mixed-method values.
    LargestNotExceeding,
    /// Largest a'_j dividing a_i, i.e. gcd(a_i, M').
    LargestDividing,
};

/// For each divisor a_i of the large modulus: min(lemma A, r'_j 2^{i-j}).
/// Throws StructuralError unless exact_chain's modulus divides chain's and
/// exact_counts has one entry per divisor of the small modulus.
std::vector<CountEstimate> mixed_estimates(const DivisorChain& chain, const DivisorChain& exact_chain,
                                           std::span<const Natural> exact_counts,
                                           LiftSelection selection = LiftSelection::LargestNotExceeding);

struct MixedOptions {
    unsigned precision_bits = kDefaultPrecisionBits;
    LiftSelection selection = LiftSelection::LargestNotExceeding;
    unsigned workers = 1;
};

BoundReport mixed_bound(const FactoredInteger& m, const FactoredInteger& m_exact,
                        std::span<const Natural> exact_counts, const MixedOptions& options = {});

}  // namespace efrac
