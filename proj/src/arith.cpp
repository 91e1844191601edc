#include "efrac/arith.hpp"

#include "efrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace efrac {

Natural::Natural(std::uint64_t v) {
    // mpz_class has no portable uint64 constructor on every ABI.
    mpz_import(v_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
}

Natural::Natural(const mpz_class& v) : v_(v) {
    if (sgn(v_) < 0) throw StructuralError("Natural: negative value " + v_.get_str());
}

Natural::Natural(mpz_class&& v) : v_(std::move(v)) {
    if (sgn(v_) < 0) throw StructuralError("Natural: negative value " + v_.get_str());
}

Natural Natural::parse(std::string_view text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw StructuralError("not a natural number: '" + std::string(text) + "'");
    }
    return Natural(mpz_class(std::string(text), 10));
}

bool Natural::fits_u64() const noexcept { return mpz_sizeinbase(v_.get_mpz_t(), 2) <= 64; }

std::uint64_t Natural::to_u64() const {
    if (!fits_u64()) throw ResourceError("value " + str() + " exceeds 64 bits");
    std::uint64_t out = 0;
    std::size_t count = 0;
    mpz_export(&out, &count, 1, sizeof(out), 0, 0, v_.get_mpz_t());
    return count == 0 ? 0 : out;
}

std::size_t Natural::bit_length() const noexcept {
    return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
}

Natural& Natural::operator<<=(std::uint64_t bits) {
    mpz_mul_2exp(v_.get_mpz_t(), v_.get_mpz_t(), bits);
    return *this;
}

Natural operator-(const Natural& a, const Natural& b) {
    if (b > a) throw StructuralError("Natural subtraction underflow");
    return Natural(mpz_class(a.v_ - b.v_));
}

Natural operator%(const Natural& a, const Natural& b) {
    if (b.is_zero()) throw StructuralError("modulo by zero");
    return Natural(mpz_class(a.v_ % b.v_));
}

Natural gcd(const Natural& a, const Natural& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return Natural(std::move(g));
}

Natural lcm(const Natural& a, const Natural& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return Natural(std::move(l));
}

bool divides(const Natural& d, const Natural& n) {
    if (d.is_zero()) return n.is_zero();
    return mpz_divisible_p(n.mpz().get_mpz_t(), d.mpz().get_mpz_t()) != 0;
}

Natural divide_exact(const Natural& a, const Natural& b) {
    if (b.is_zero() || !divides(b, a)) {
        throw StructuralError(b.str() + " does not divide " + a.str());
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return Natural(std::move(q));
}

Natural pow(const Natural& base, unsigned exp) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.mpz().get_mpz_t(), exp);
    return Natural(std::move(r));
}

Fraction::Fraction(std::int64_t n) {
    q_ = mpq_class(mpz_class(static_cast<long>(n)));
}

Fraction::Fraction(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw StructuralError("Fraction: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Fraction& Fraction::operator/=(const Fraction& o) {
    if (o.sign() == 0) throw StructuralError("Fraction: division by zero");
    q_ /= o.q_;
    return *this;
}

std::size_t FractionHash::operator()(const Fraction& f) const noexcept {
    const auto* num = f.mpq().get_num_mpz_t();
    const auto* den = f.mpq().get_den_mpz_t();
    std::size_t h = mpz_size(num) ? mpz_getlimbn(num, 0) : 0;
    h ^= (mpz_size(den) ? mpz_getlimbn(den, 0) : 0) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::size_t>(mpz_sgn(num)) << 1;
    return h;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

FactoredInteger::FactoredInteger(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
    std::uint64_t prev = 1;
    for (const auto& [p, e] : factors_) {
        if (p <= prev || !is_prime(p) || e == 0) {
            throw StructuralError("FactoredInteger: factors must be increasing primes with exponent >= 1");
        }
        prev = p;
    }
}

FactoredInteger FactoredInteger::factor(const Natural& n) {
    if (n.is_zero()) throw StructuralError("cannot factor zero");
    std::vector<PrimePower> out;
    mpz_class rest = n.mpz();
    auto strip = [&](std::uint64_t p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e) out.push_back({p, e});
    };
    strip(2);
    for (std::uint64_t p = 3; p <= kMaxTrialPrime && rest != 1; p += 2) {
        if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) {
            // rest is 1 or a prime below p^2
            if (rest > 1) {
                if (mpz_cmp_ui(rest.get_mpz_t(), kMaxTrialPrime) > 0) break;
                out.push_back({mpz_get_ui(rest.get_mpz_t()), 1});
                rest = 1;
            }
            break;
        }
        strip(p);
    }
    if (rest != 1) {
        throw StructuralError("modulus " + n.str() + " has a prime factor above " +
                              std::to_string(kMaxTrialPrime) + "; only smooth moduli are supported");
    }
    FactoredInteger f;
    f.factors_ = std::move(out);
    return f;
}

Natural FactoredInteger::value() const {
    Natural v(1);
    for (const auto& [p, e] : factors_) v *= pow(Natural(p), e);
    return v;
}

unsigned FactoredInteger::exponent_of(std::uint64_t p) const noexcept {
    for (const auto& f : factors_) {
        if (f.prime == p) return f.exponent;
    }
    return 0;
}

std::uint64_t FactoredInteger::divisor_count() const noexcept {
    std::uint64_t c = 1;
    for (const auto& f : factors_) c *= f.exponent + 1;
    return c;
}

bool FactoredInteger::divides(const FactoredInteger& other) const noexcept {
    return std::all_of(factors_.begin(), factors_.end(),
                       [&](const PrimePower& f) { return other.exponent_of(f.prime) >= f.exponent; });
}

FactoredInteger lcm_range_factored(std::uint64_t m) {
    std::vector<PrimePower> out;
    for (std::uint64_t p : primes_upto(m)) {
        unsigned e = 0;
        for (std::uint64_t q = p; q <= m; q *= p) {
            ++e;
            if (q > m / p) break;
        }
        out.push_back({p, e});
    }
    return FactoredInteger(std::move(out));
}

Natural lcm_range(std::uint64_t m) {
    Natural acc(1);
    for (std::uint64_t k = 2; k <= m; ++k) acc = lcm(acc, Natural(k));
    return acc;
}

std::vector<Natural> divisors_sorted(const FactoredInteger& m) {
    std::vector<mpz_class> divs{mpz_class(1)};
    divs.reserve(m.divisor_count());
    for (const auto& [p, e] : m.factors()) {
        const std::size_t base = divs.size();
        mpz_class pk(1);
        for (unsigned k = 1; k <= e; ++k) {
            pk *= static_cast<unsigned long>(p);
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    std::vector<Natural> out;
    out.reserve(divs.size());
    for (auto& d : divs) out.emplace_back(std::move(d));
    return out;
}

Natural sigma(const FactoredInteger& m) {
    Natural s(1);
    for (const auto& [p, e] : m.factors()) {
        // (p^{e+1} - 1) / (p - 1)
        Natural term = divide_exact(pow(Natural(p), e + 1) - Natural(1), Natural(p - 1));
        s *= term;
    }
    return s;
}

unsigned p_adic_valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0 || p < 2) throw StructuralError("p_adic_valuation: need n >= 1 and p >= 2");
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

unsigned p_adic_valuation(const Natural& n, std::uint64_t p) {
    if (n.is_zero() || p < 2) throw StructuralError("p_adic_valuation: need n >= 1 and p >= 2");
    mpz_class rest = n.mpz();
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
    }
    return e;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t x, std::uint64_t cap) {
    if (x > cap) {
        throw ResourceError("sieve limit " + std::to_string(x) + " exceeds configured cap " + std::to_string(cap));
    }
    std::vector<std::uint64_t> primes;
    if (x < 2) return primes;

    // base primes up to sqrt(x) with a plain sieve
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x))) + 1;
    std::vector<bool> small(root + 1, true);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
    }

    constexpr std::uint64_t kSegment = 1 << 18;
    std::vector<char> seg(kSegment);
    for (std::uint64_t lo = 2; lo <= x; lo += kSegment) {
        const std::uint64_t hi = std::min(x, lo + kSegment - 1);
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
        }
        for (std::uint64_t i = lo; i <= hi; ++i) {
            if (seg[i - lo]) primes.push_back(i);
        }
    }
    return primes;
}

PrimeCounter::PrimeCounter(std::uint64_t limit, std::uint64_t cap)
    : limit_(limit), primes_(primes_upto(limit, cap)) {}

std::uint64_t PrimeCounter::pi(std::uint64_t x) const {
    if (x > limit_) throw std::out_of_range("PrimeCounter: argument above sieve limit");
    return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

}  // namespace efrac
