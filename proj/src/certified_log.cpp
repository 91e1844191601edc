#include "efrac/certified_log.hpp"

#include "efrac/errors.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace efrac {
namespace {

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

mpz_class cdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

mpz_class fshift(const mpz_class& a, unsigned bits) {
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), a.get_mpz_t(), bits);
    return q;
}

mpz_class cshift(const mpz_class& a, unsigned bits) {
    mpz_class q;
    mpz_cdiv_q_2exp(q.get_mpz_t(), a.get_mpz_t(), bits);
    return q;
}

mpz_class pow2(unsigned bits) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, bits);
    return p;
}

// Encloses 2*atanh(t) = log((1+t)/(1-t)) for an exact rational 0 <= t <= 1/3
// at wp fractional bits.
std::pair<mpz_class, mpz_class> two_atanh(const mpz_class& t_num, const mpz_class& t_den, unsigned wp) {
    const mpz_class one = pow2(wp);
    const mpz_class t_lo = fdiv(t_num * one, t_den);
    const mpz_class t_hi = cdiv(t_num * one, t_den);
    const mpz_class t2_lo = fshift(t_lo * t_lo, wp);
    const mpz_class t2_hi = cshift(t_hi * t_hi, wp);

    mpz_class lo = 0;
    mpz_class p = t_lo;
    for (unsigned long j = 0; sgn(p) > 0; ++j) {
        lo += p / (2 * j + 1);  // nonnegative, so truncation is floor
        p = fshift(p * t2_lo, wp);
    }

    mpz_class hi = 0;
    p = t_hi;
    unsigned long j = 0;
    // p is an upper bound on t^{2j+1} in units of 2^-wp
    for (; p > 16; ++j) {
        hi += cdiv(p, mpz_class(2 * j + 1));
        p = cshift(p * t2_hi, wp);
    }
    // tail sum_{i>=j} t^{2i+1}/(2i+1) <= p / (1 - t^2) <= p * 9/8
    hi += cdiv(p * 9, mpz_class(8)) + 1;

    return {lo * 2, hi * 2};
}

}  // namespace

DyadicInterval::DyadicInterval(mpz_class lo, mpz_class hi, unsigned frac_bits)
    : lo_(std::move(lo)), hi_(std::move(hi)), frac_bits_(frac_bits) {
    if (lo_ > hi_) throw StructuralError("DyadicInterval: lo > hi");
}

DyadicInterval DyadicInterval::enclose(const Fraction& x, unsigned frac_bits) {
    const mpz_class scaled = x.num() * pow2(frac_bits);
    return {fdiv(scaled, x.den()), cdiv(scaled, x.den()), frac_bits};
}

Fraction DyadicInterval::lo_value() const { return Fraction(lo_, pow2(frac_bits_)); }
Fraction DyadicInterval::hi_value() const { return Fraction(hi_, pow2(frac_bits_)); }

DyadicInterval& DyadicInterval::operator+=(const DyadicInterval& o) {
    if (o.frac_bits_ != frac_bits_) return *this += o.rounded(frac_bits_);
    lo_ += o.lo_;
    hi_ += o.hi_;
    return *this;
}

DyadicInterval& DyadicInterval::operator-=(const DyadicInterval& o) {
    if (o.frac_bits_ != frac_bits_) return *this -= o.rounded(frac_bits_);
    lo_ -= o.hi_;
    hi_ -= o.lo_;
    return *this;
}

DyadicInterval DyadicInterval::times(std::uint64_t k) const {
    const mpz_class kz = Natural(k).mpz();
    return {lo_ * kz, hi_ * kz, frac_bits_};
}

DyadicInterval DyadicInterval::scaled(const Fraction& q) const {
    if (q.sign() < 0) throw StructuralError("DyadicInterval::scaled needs a nonnegative factor");
    const mpz_class n = q.num();
    const mpz_class d = q.den();
    return {fdiv(lo_ * n, d), cdiv(hi_ * n, d), frac_bits_};
}

DyadicInterval DyadicInterval::rounded(unsigned frac_bits) const {
    if (frac_bits >= frac_bits_) {
        const unsigned up = frac_bits - frac_bits_;
        return {mpz_class(lo_ << up), mpz_class(hi_ << up), frac_bits};
    }
    const unsigned down = frac_bits_ - frac_bits;
    return {fshift(lo_, down), cshift(hi_, down), frac_bits};
}

DyadicInterval log2_interval(unsigned frac_bits) {
    static std::mutex mu;
    static std::map<unsigned, DyadicInterval> cache;
    const unsigned wp = frac_bits + 16;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(frac_bits); it != cache.end()) return it->second;
    }
    // log 2 = 2 atanh(1/3)
    auto [lo, hi] = two_atanh(1, 3, wp);
    DyadicInterval out = DyadicInterval(lo, hi, wp).rounded(frac_bits);
    std::lock_guard lock(mu);
    cache.emplace(frac_bits, out);
    return out;
}

DyadicInterval log_interval(const Natural& n, unsigned frac_bits) {
    if (n.is_zero()) throw StructuralError("log of zero");
    if (n == Natural(1)) return DyadicInterval::zero(frac_bits);
    // n = 2^k x with x in [1, 2); log x = 2 atanh((n - 2^k) / (n + 2^k))
    const std::uint64_t k = n.bit_length() - 1;
    const std::size_t k_bits = Natural(k).bit_length();
    const unsigned wp = frac_bits + 32 + static_cast<unsigned>(k_bits);

    mpz_class two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
    auto [lo, hi] = two_atanh(n.mpz() - two_k, n.mpz() + two_k, wp);
    DyadicInterval result(lo, hi, wp);
    result += log2_interval(wp).times(k);
    return result.rounded(frac_bits);
}

LogUpper log_upper(const Natural& n, unsigned precision_bits) {
    if (n == Natural(1)) return {0, precision_bits};
    for (unsigned extra = 16;; extra *= 2) {
        const DyadicInterval iv = log_interval(n, precision_bits + extra);
        const mpz_class value = cshift(iv.hi(), extra);
        // value - log n <= value - lo must stay within one unit of 2^-p
        if ((value << extra) - iv.lo() <= pow2(extra)) return {value, precision_bits};
    }
}

namespace {

std::string render_decimal(const mpz_class& q, unsigned digits) {
    std::string s = mpz_class(abs(q)).get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits) s.insert(s.size() - digits, ".");
    return sgn(q) < 0 ? "-" + s : s;
}

mpz_class pow10(unsigned digits) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, digits);
    return t;
}

}  // namespace

std::string decimal_round_up(const mpz_class& scaled, unsigned frac_bits, unsigned digits) {
    return render_decimal(cshift(scaled * pow10(digits), frac_bits), digits);
}

std::string decimal_round_down(const mpz_class& scaled, unsigned frac_bits, unsigned digits) {
    return render_decimal(fshift(scaled * pow10(digits), frac_bits), digits);
}

}  // namespace efrac
