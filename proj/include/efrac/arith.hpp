#pragma once

// Exact arithmetic substrate: unbounded naturals and rationals (GMP-backed),
// factored integers, divisor utilities and prime sieving.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace efrac {

/// Nonnegative integer of unbounded magnitude.
class Natural {
public:
    Natural() = default;
    Natural(std::uint64_t v);  // NOLINT(google-explicit-constructor)
    explicit Natural(const mpz_class& v);
    explicit Natural(mpz_class&& v);
    /// Parses a base-10 string; throws StructuralError on junk or a sign.
    static Natural parse(std::string_view text);

    const mpz_class& mpz() const noexcept { return v_; }

    bool is_zero() const noexcept { return sgn(v_) == 0; }
    bool fits_u64() const noexcept;
    /// Throws ResourceError when the value does not fit.
    std::uint64_t to_u64() const;
    std::size_t bit_length() const noexcept;
    std::string str() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }

    Natural& operator+=(const Natural& o) { v_ += o.v_; return *this; }
    Natural& operator*=(const Natural& o) { v_ *= o.v_; return *this; }
    Natural& operator<<=(std::uint64_t bits);

    friend Natural operator+(Natural a, const Natural& b) { return a += b; }
    friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
    friend Natural operator<<(Natural a, std::uint64_t bits) { return a <<= bits; }
    /// a - b; throws StructuralError when b > a.
    friend Natural operator-(const Natural& a, const Natural& b);
    friend Natural operator%(const Natural& a, const Natural& b);

    friend bool operator==(const Natural& a, const Natural& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.v_; }

private:
    mpz_class v_;
};

Natural gcd(const Natural& a, const Natural& b);
Natural lcm(const Natural& a, const Natural& b);
/// a / b where b | a; throws StructuralError otherwise.
Natural divide_exact(const Natural& a, const Natural& b);
bool divides(const Natural& d, const Natural& n);
Natural pow(const Natural& base, unsigned exp);

/// Reduced rational num/den with den >= 1; zero is 0/1.
class Fraction {
public:
    Fraction() = default;
    Fraction(std::int64_t n);  // NOLINT(google-explicit-constructor)
    Fraction(const mpz_class& num, const mpz_class& den);
    explicit Fraction(const Natural& n) : Fraction(n.mpz(), mpz_class(1)) {}
    static Fraction ratio(const Natural& num, const Natural& den) { return {num.mpz(), den.mpz()}; }
    static Fraction unit(std::uint64_t den) { return {mpz_class(1), mpz_class(den)}; }

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& mpq() const noexcept { return q_; }
    int sign() const noexcept { return sgn(q_); }
    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }

    Fraction& operator+=(const Fraction& o) { q_ += o.q_; return *this; }
    Fraction& operator-=(const Fraction& o) { q_ -= o.q_; return *this; }
    Fraction& operator*=(const Fraction& o) { q_ *= o.q_; return *this; }
    Fraction& operator/=(const Fraction& o);

    friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
    friend Fraction operator-(Fraction a, const Fraction& b) { return a -= b; }
    friend Fraction operator*(Fraction a, const Fraction& b) { return a *= b; }
    friend Fraction operator/(Fraction a, const Fraction& b) { return a /= b; }
    friend Fraction operator-(const Fraction& a) { return Fraction(0) - a; }

    friend bool operator==(const Fraction& a, const Fraction& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.q_; }

private:
    mpq_class q_;
};

struct FractionHash {
    std::size_t operator()(const Fraction& f) const noexcept;
};

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Integer stored as its prime factorization, primes increasing.
class FactoredInteger {
public:
    FactoredInteger() = default;  // the integer 1
    /// Validates that keys are increasing primes with exponent >= 1.
    explicit FactoredInteger(std::vector<PrimePower> factors);

    /// Trial division by primes up to kMaxTrialPrime. Throws StructuralError
    /// for zero and for inputs with a prime factor above that limit.
    static FactoredInteger factor(const Natural& n);
    static FactoredInteger factor(std::uint64_t n) { return factor(Natural(n)); }

    std::span<const PrimePower> factors() const noexcept { return factors_; }
    Natural value() const;
    unsigned exponent_of(std::uint64_t p) const noexcept;
    /// Number of divisors, prod (e_p + 1).
    std::uint64_t divisor_count() const noexcept;
    bool divides(const FactoredInteger& other) const noexcept;

    friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

    static constexpr std::uint64_t kMaxTrialPrime = 1'000'000;

private:
    std::vector<PrimePower> factors_;
};

/// lcm(1, ..., m).
Natural lcm_range(std::uint64_t m);
FactoredInteger lcm_range_factored(std::uint64_t m);

/// All divisors of m, strictly increasing.
std::vector<Natural> divisors_sorted(const FactoredInteger& m);

/// Sum of divisors.
Natural sigma(const FactoredInteger& m);

/// Largest e with p^e | n. Requires n >= 1 and p >= 2.
unsigned p_adic_valuation(std::uint64_t n, std::uint64_t p);
unsigned p_adic_valuation(const Natural& n, std::uint64_t p);

/// Deterministic primality by trial division, for the small arguments used here.
bool is_prime(std::uint64_t n);

inline constexpr std::uint64_t kDefaultSieveCap = 1'000'000'000;

/// Primes <= x, increasing, via a segmented sieve of Eratosthenes.
/// Throws ResourceError when x exceeds cap.
std::vector<std::uint64_t> primes_upto(std::uint64_t x, std::uint64_t cap = kDefaultSieveCap);

/// pi(x) for many arguments: sieves once up to the largest requested value.
class PrimeCounter {
public:
    explicit PrimeCounter(std::uint64_t limit, std::uint64_t cap = kDefaultSieveCap);
    std::uint64_t limit() const noexcept { return limit_; }
    /// pi(x) for x <= limit(); throws std::out_of_range above it.
    std::uint64_t pi(std::uint64_t x) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

}  // namespace efrac
