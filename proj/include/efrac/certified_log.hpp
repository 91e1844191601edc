#pragma once

// Outward-rounded dyadic interval arithmetic and certified logarithms of
// positive integers.

#include "efrac/arith.hpp"

#include <gmpxx.h>

#include <string>

namespace efrac {

/// The closed interval [lo, hi] * 2^-frac_bits. Every operation rounds lo
/// down and hi up, so the true value never leaves the interval.
class DyadicInterval {
public:
    DyadicInterval(mpz_class lo, mpz_class hi, unsigned frac_bits);
    static DyadicInterval zero(unsigned frac_bits) { return {0, 0, frac_bits}; }
    /// Tightest enclosure of an exact rational.
    static DyadicInterval enclose(const Fraction& x, unsigned frac_bits);

    const mpz_class& lo() const noexcept { return lo_; }
    const mpz_class& hi() const noexcept { return hi_; }
    unsigned frac_bits() const noexcept { return frac_bits_; }
    Fraction lo_value() const;
    Fraction hi_value() const;
    bool contains(const Fraction& x) const { return lo_value() <= x && x <= hi_value(); }

    DyadicInterval& operator+=(const DyadicInterval& o);
    DyadicInterval& operator-=(const DyadicInterval& o);
    friend DyadicInterval operator+(DyadicInterval a, const DyadicInterval& b) { return a += b; }
    friend DyadicInterval operator-(DyadicInterval a, const DyadicInterval& b) { return a -= b; }

    /// Multiply by an exact nonnegative integer.
    DyadicInterval times(std::uint64_t k) const;
    /// Multiply by an exact nonnegative rational.
    DyadicInterval scaled(const Fraction& q) const;
    /// Re-express at another precision, rounding outward when bits drop.
    DyadicInterval rounded(unsigned frac_bits) const;

private:
    mpz_class lo_;
    mpz_class hi_;
    unsigned frac_bits_;
};

/// Enclosure of log 2.
DyadicInterval log2_interval(unsigned frac_bits);

/// Enclosure of log n for n >= 1, width at most a few units of 2^-frac_bits.
DyadicInterval log_interval(const Natural& n, unsigned frac_bits);

/// A dyadic upper bound value / 2^precision_bits on log n with
/// 0 <= value/2^p - log n <= 2^-p.
struct LogUpper {
    mpz_class value;
    unsigned precision_bits;
};

LogUpper log_upper(const Natural& n, unsigned precision_bits);

/// ceil(scaled * 10^digits / 2^frac_bits) rendered as a decimal string with
/// exactly `digits` fractional digits; never below the dyadic value.
std::string decimal_round_up(const mpz_class& scaled, unsigned frac_bits, unsigned digits);
/// Same with floor.
std::string decimal_round_down(const mpz_class& scaled, unsigned frac_bits, unsigned digits);

}  // namespace efrac
