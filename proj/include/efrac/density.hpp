#pragma once

// Natural density of D = { n : mu_p | nu_p(n) for every prime p }.

#include "efrac/arith.hpp"

#include <cstdint>
#include <map>
#include <span>

namespace efrac {

/// Exponents mu_p >= 1; primes absent from the map have mu_p = 1.
class ValuationProfile {
public:
    ValuationProfile() = default;
    /// Entries with mu = 1 are dropped; mu = 0 or a non-prime key throws.
    explicit ValuationProfile(const std::map<std::uint64_t, unsigned>& mu);

    /// The profile whose modulus prod p^{mu_p - 1} equals m.
    static ValuationProfile of_modulus(const FactoredInteger& m);

    unsigned mu(std::uint64_t p) const noexcept;
    const std::map<std::uint64_t, unsigned>& entries() const noexcept { return mu_; }
    /// M = prod p^{mu_p - 1}.
    FactoredInteger modulus() const;
    /// mu_p | nu_p(n) for every prime in the profile.
    bool contains(std::uint64_t n) const noexcept;

    friend bool operator==(const ValuationProfile&, const ValuationProfile&) = default;

private:
    std::map<std::uint64_t, unsigned> mu_;
};

/// prod_p (1 - 1/p) / (1 - p^{-mu_p}), exact.
Fraction delta_from_profile(const ValuationProfile& profile);

/// M / sigma(M); equal to delta_from_profile(ValuationProfile::of_modulus(M)).
Fraction delta_from_modulus(const FactoredInteger& m);

/// mu_p = 1 + max nu_p(a) over the set; the modulus is lcm(a).
ValuationProfile profile_from_set(std::span<const std::uint64_t> a);

/// #{ n <= x : n in D } / x.
Fraction empirical_density(const ValuationProfile& profile, std::uint64_t x);

}  // namespace efrac
