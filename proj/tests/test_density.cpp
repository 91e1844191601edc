#include "efrac/density.hpp"
#include "efrac/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace efrac;

namespace {

using Mu = std::map<std::uint64_t, unsigned>;

Fraction frac(long n, long d) { return Fraction(mpz_class(n), mpz_class(d)); }

}  // namespace

TEST_CASE("density from a profile") {
    CHECK(delta_from_profile(ValuationProfile{}) == Fraction(1));
    CHECK(delta_from_profile(ValuationProfile(Mu{{2, 2}})) == frac(2, 3));
    CHECK(delta_from_profile(ValuationProfile::of_modulus(FactoredInteger::factor(12))) == frac(3, 7));
    CHECK(delta_from_modulus(FactoredInteger::factor(6)) == frac(1, 2));
    CHECK(delta_from_modulus(FactoredInteger::factor(12)) == frac(12, 28));
    CHECK(delta_from_modulus(FactoredInteger::factor(1)) == Fraction(1));
}

TEST_CASE("profile validation and modulus round trip") {
    CHECK_THROWS_AS(ValuationProfile(Mu{{4, 2}}), StructuralError);
    CHECK_THROWS_AS(ValuationProfile(Mu{{3, 0}}), StructuralError);
    const ValuationProfile p(Mu{{2, 3}, {3, 2}, {5, 1}});
    CHECK(p.entries().size() == 2);
    CHECK(p.mu(5) == 1);
    CHECK(p.mu(7) == 1);
    CHECK(p.modulus().value() == Natural(12));
    for (std::uint64_t m = 1; m <= 3000; ++m) {
        const auto f = FactoredInteger::factor(m);
        CHECK(ValuationProfile::of_modulus(f).modulus() == f);
    }
}

TEST_CASE("profile from a set") {
    const std::vector<std::uint64_t> one{1};
    CHECK(profile_from_set(one).entries().empty());
    const std::vector<std::uint64_t> six{1, 2, 3, 6};
    const auto p6 = profile_from_set(six);
    CHECK(p6.mu(2) == 2);
    CHECK(p6.mu(3) == 2);
    CHECK(p6.modulus().value() == Natural(6));
    const std::vector<std::uint64_t> twelve{1, 2, 3, 4, 6, 12};
    CHECK(profile_from_set(twelve).modulus().value() == Natural(12));
}

TEST_CASE("membership and empirical density") {
    const ValuationProfile even2(Mu{{2, 2}});
    std::vector<std::uint64_t> members;
    for (std::uint64_t n = 1; n <= 8; ++n) {
        if (even2.contains(n)) members.push_back(n);
    }
    CHECK(members == std::vector<std::uint64_t>{1, 3, 4, 5, 7});
    CHECK(empirical_density(even2, 8) == frac(5, 8));
    CHECK(empirical_density(ValuationProfile{}, 100) == Fraction(1));
    const auto p12 = ValuationProfile::of_modulus(FactoredInteger::factor(12));
    const Fraction gap = empirical_density(p12, 1'000'000) - frac(3, 7);
    CHECK(std::abs(gap.to_double()) < 1e-3);
}

TEST_CASE("product formula equals M / sigma(M)") {
    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
    for (int t = 0; t < 300; ++t) {
        const std::uint64_t m = pick(rng);
        const auto f = FactoredInteger::factor(m);
        const Fraction expect(mpz_class(static_cast<unsigned long>(m)), mpz_class(static_cast<unsigned long>(oracle::sigma(m))));
        CHECK(delta_from_profile(ValuationProfile::of_modulus(f)) == expect);
        CHECK(delta_from_modulus(f) == expect);
    }
}
