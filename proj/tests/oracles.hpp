#pragma once

// Slow, independent reference implementations used only by the tests.
// Nothing here calls into the library.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

namespace oracle {

inline std::uint64_t fold_lcm(std::uint64_t m) {
    std::uint64_t l = 1;
    for (std::uint64_t k = 2; k <= m; ++k) l = std::lcm(l, k);
    return l;
}

inline mpz_class fold_lcm_big(std::uint64_t m) {
    mpz_class l = 1;
    for (std::uint64_t k = 2; k <= m; ++k) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), k);
    return l;
}

inline bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t m) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t k = 1; k <= m; ++k) {
        if (m % k == 0) d.push_back(k);
    }
    return d;
}

inline std::uint64_t sigma(std::uint64_t m) {
    std::uint64_t s = 0;
    for (std::uint64_t k = 1; k * k <= m; ++k) {
        if (m % k) continue;
        s += k;
        if (k != m / k) s += m / k;
    }
    return s;
}

// Reduced fraction as a (num, den) pair of 64-bit integers.
using Rat = std::pair<std::int64_t, std::int64_t>;

inline Rat reduce(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return {num / g, den / g};
}

// Every subset sum of 1/a over a, by walking all 2^#a subsets in Gray-code
// order and reducing each sum separately. Only for #a <= 26.
inline std::size_t literal_subset_sum_count(const std::vector<std::uint64_t>& a) {
    std::int64_t den = 1;
    for (auto x : a) den = std::lcm(den, static_cast<std::int64_t>(x));
    std::set<Rat> seen;
    std::int64_t num = 0;
    seen.insert(reduce(0, den));
    const std::uint64_t total = std::uint64_t{1} << a.size();
    std::uint64_t prev = 0;
    for (std::uint64_t g = 1; g < total; ++g) {
        const std::uint64_t code = g ^ (g >> 1);
        const std::uint64_t flip = code ^ prev;
        const int bit = __builtin_ctzll(flip);
        const std::int64_t term = den / static_cast<std::int64_t>(a[bit]);
        num += (code & flip) ? term : -term;
        seen.insert(reduce(num, den));
        prev = code;
    }
    return seen.size();
}

struct MpqHash {
    std::size_t operator()(const mpq_class& q) const {
        return std::hash<std::string>{}(q.get_str());
    }
};

// R_i as a hashed set of exact rationals, R_i = R_{i-1} u (R_{i-1} + 1/a_i).
inline std::vector<std::size_t> rational_prefix_counts(const std::vector<std::uint64_t>& a) {
    std::unordered_set<mpq_class, MpqHash> cur{mpq_class(0)};
    std::vector<std::size_t> out;
    for (auto x : a) {
        const mpq_class step(1, x);
        std::vector<mpq_class> add;
        add.reserve(cur.size());
        for (const auto& q : cur) add.push_back(q + step);
        for (auto& q : add) {
            q.canonicalize();
            cur.insert(std::move(q));
        }
        out.push_back(cur.size());
    }
    return out;
}

// #E_N for N = 1..max_n through hashed exact rationals.
inline std::vector<std::size_t> egyptian_counts(std::uint64_t max_n) {
    std::vector<std::uint64_t> a(max_n);
    std::iota(a.begin(), a.end(), 1);
    return rational_prefix_counts(a);
}

// 1/n as a signed sum over 1..n-1, by scanning all 3^(n-1) weight vectors.
inline bool brute_in_u(std::uint64_t n) {
    if (n == 1) return true;
    const std::int64_t den = static_cast<std::int64_t>(fold_lcm(n));
    const std::int64_t target = den / static_cast<std::int64_t>(n);
    std::vector<int> w(n - 1, -1);
    for (;;) {
        std::int64_t s = 0;
        for (std::uint64_t k = 1; k < n; ++k) s += w[k - 1] * (den / static_cast<std::int64_t>(k));
        if (s == target) return false;
        std::size_t i = 0;
        while (i < w.size() && w[i] == 1) w[i++] = -1;
        if (i == w.size()) return true;
        ++w[i];
    }
}

}  // namespace oracle
