#include "efrac/density.hpp"

#include "efrac/errors.hpp"

#include <vector>

namespace efrac {

ValuationProfile::ValuationProfile(const std::map<std::uint64_t, unsigned>& mu) {
    for (const auto& [p, e] : mu) {
        if (!is_prime(p)) throw StructuralError("valuation profile key " + std::to_string(p) + " is not prime");
        if (e == 0) throw StructuralError("valuation profile exponents must be >= 1");
        if (e > 1) mu_.emplace(p, e);
    }
}

ValuationProfile ValuationProfile::of_modulus(const FactoredInteger& m) {
    ValuationProfile prof;
    for (const auto& [p, e] : m.factors()) prof.mu_.emplace(p, e + 1);
    return prof;
}

unsigned ValuationProfile::mu(std::uint64_t p) const noexcept {
    const auto it = mu_.find(p);
    return it == mu_.end() ? 1 : it->second;
}

FactoredInteger ValuationProfile::modulus() const {
    std::vector<PrimePower> f;
    for (const auto& [p, e] : mu_) f.push_back({p, e - 1});
    return FactoredInteger(std::move(f));
}

bool ValuationProfile::contains(std::uint64_t n) const noexcept {
    for (const auto& [p, e] : mu_) {
        unsigned v = 0;
        std::uint64_t rest = n;
        while (rest % p == 0) {
            rest /= p;
            ++v;
        }
        if (v % e != 0) return false;
    }
    return true;
}

Fraction delta_from_profile(const ValuationProfile& profile) {
    Fraction delta(1);
    for (const auto& [p, e] : profile.entries()) {
        const mpz_class pz = Natural(p).mpz();
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), pz.get_mpz_t(), e);
        // (1 - 1/p) / (1 - 1/p^e) = (p - 1) p^{e-1} / (p^e - 1)
        delta *= Fraction(mpz_class((pz - 1) * (pe / pz)), mpz_class(pe - 1));
    }
    return delta;
}

Fraction delta_from_modulus(const FactoredInteger& m) {
    return Fraction::ratio(m.value(), sigma(m));
}

ValuationProfile profile_from_set(std::span<const std::uint64_t> a) {
    if (a.empty()) throw StructuralError("profile_from_set: set must be nonempty");
    Natural l(1);
    for (auto v : a) {
        if (v == 0) throw StructuralError("profile_from_set: elements must be positive");
        l = lcm(l, Natural(v));
    }
    return ValuationProfile::of_modulus(FactoredInteger::factor(l));
}

Fraction empirical_density(const ValuationProfile& profile, std::uint64_t x) {
    if (x == 0) throw StructuralError("empirical_density: x must be >= 1");
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (profile.contains(n)) ++count;
    }
    return Fraction(Natural(count).mpz(), Natural(x).mpz());
}

}  // namespace efrac
