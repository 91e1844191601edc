#include "efrac/uset.hpp"

#include "efrac/errors.hpp"
#include "efrac/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace efrac {
namespace {

// Sorted distinct values of sum_i w_i x_i over w in {-1,0,1}^len.
std::vector<std::int64_t> signed_sums(std::span<const std::int64_t> xs, std::uint64_t memory_budget,
                                      std::uint64_t n) {
    std::vector<std::int64_t> cur{0};
    std::vector<std::int64_t> next;
    for (std::int64_t x : xs) {
        const std::uint64_t bytes = (cur.size() + 3 * cur.size()) * sizeof(std::int64_t);
        if (bytes > memory_budget) {
            throw ResourceError("U decision for n=" + std::to_string(n) + " needs " + std::to_string(bytes) +
                                " bytes; use the certificate route (certify_u) instead");
        }
        next.clear();
        next.reserve(3 * cur.size());
        // three sorted streams cur - x, cur, cur + x
        std::size_t i = 0;
        std::size_t j = 0;
        std::size_t k = 0;
        const std::size_t len = cur.size();
        while (i < len || j < len || k < len) {
            std::int64_t best = INT64_MAX;
            if (i < len) best = std::min(best, cur[i] - x);
            if (j < len) best = std::min(best, cur[j]);
            if (k < len) best = std::min(best, cur[k] + x);
            if (i < len && cur[i] - x == best) ++i;
            if (j < len && cur[j] == best) ++j;
            if (k < len && cur[k] + x == best) ++k;
            if (next.empty() || next.back() != best) next.push_back(best);
        }
        cur.swap(next);
    }
    return cur;
}

// Sign assignment for xs reaching target; suffix bounds prune the search.
bool reconstruct(std::span<const std::int64_t> xs, std::int64_t target, std::span<const std::int64_t> suffix,
                 std::size_t pos, std::vector<int>& out) {
    if (pos == xs.size()) return target == 0;
    if (std::llabs(target) > suffix[pos]) return false;
    for (int w : {0, 1, -1}) {
        out[pos] = w;
        if (reconstruct(xs, target - w * xs[pos], suffix, pos + 1, out)) return true;
    }
    out[pos] = 0;
    return false;
}

std::vector<int> solve_half(std::span<const std::int64_t> xs, std::int64_t target) {
    std::vector<std::int64_t> suffix(xs.size() + 1, 0);
    for (std::size_t i = xs.size(); i-- > 0;) suffix[i] = suffix[i + 1] + xs[i];
    std::vector<int> out(xs.size(), 0);
    if (!reconstruct(xs, target, suffix, 0, out)) throw std::logic_error("half-sum reconstruction failed");
    return out;
}

}  // namespace

UDecision decide_u_exact(std::uint64_t n, std::uint64_t cap, std::uint64_t memory_budget) {
    if (n == 0) throw StructuralError("decide_u_exact: n must be >= 1");
    if (n > cap) {
        throw ResourceError("exact U decision for n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap) +
                            " (3^" + std::to_string(n - 1) + " sign vectors); use certify_u instead");
    }
    if (n == 1) return {true, {}};

    const Natural d_big = lcm_range(n);
    Natural total(0);
    for (std::uint64_t k = 1; k <= n; ++k) total += divide_exact(d_big, Natural(k));
    if (total.bit_length() > 62) throw ResourceError("exact U decision for n=" + std::to_string(n) + " overflows 64 bits");
    const auto d = static_cast<std::int64_t>(d_big.to_u64());

    std::vector<std::int64_t> xs;
    for (std::uint64_t k = 1; k < n; ++k) xs.push_back(d / static_cast<std::int64_t>(k));
    const std::int64_t target = d / static_cast<std::int64_t>(n);

    const std::size_t half = (xs.size() + 1) / 2;
    const std::span<const std::int64_t> left(xs.data(), half);
    const std::span<const std::int64_t> right(xs.data() + half, xs.size() - half);
    const auto a = signed_sums(left, memory_budget, n);
    const auto b = signed_sums(right, memory_budget, n);

    // a + b = target: walk b upward and a downward
    std::size_t ia = a.size();
    for (std::int64_t vb : b) {
        const std::int64_t want = target - vb;
        while (ia > 0 && a[ia - 1] > want) --ia;
        if (ia > 0 && a[ia - 1] == want) {
            UDecision res{false, {}};
            const auto wl = solve_half(left, want);
            const auto wr = solve_half(right, vb);
            res.witness.insert(res.witness.end(), wl.begin(), wl.end());
            res.witness.insert(res.witness.end(), wr.begin(), wr.end());
            return res;
        }
    }
    return {true, {}};
}

GmTable::GmTable(std::uint64_t max_m) {
    if (max_m == 0) throw StructuralError("g_m table needs max_m >= 1");
    Natural d(1);
    Fraction h(0);
    Natural three(1);
    for (std::uint64_t m = 1; m <= max_m; ++m) {
        d = lcm(d, Natural(m));
        h += Fraction::unit(m);
        three *= Natural(3);
        const Fraction g = h * Fraction(d);
        Natural gn(g.num());
        entries_.push_back({m, d, gn, gn < three});
    }
}

const GmTable::Entry& GmTable::at(std::uint64_t m) const {
    if (m == 0 || m > entries_.size()) throw std::out_of_range("g_m table has no entry for m=" + std::to_string(m));
    return entries_[m - 1];
}

bool GmTable::admits_lift(std::uint64_t m, std::uint64_t p) const {
    if (m == 0) return false;
    if (m <= entries_.size()) return Natural(p) > at(m).g;
    if (Natural(p) <= entries_.back().g) return false;
    return Natural(p) > GmTable(m).at(m).g;
}

GmTable g_m_table(std::uint64_t max_m) { return GmTable(max_m); }

bool admits_lift_three_pow(std::uint64_t m, std::uint64_t p) {
    std::uint64_t t = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        if (t > p / 3) return false;  // 3^m > p
        t *= 3;
    }
    return p > t;
}

std::string to_string(UCertificate::Kind kind) {
    switch (kind) {
        case UCertificate::Kind::One: return "one";
        case UCertificate::Kind::Prime: return "prime";
        case UCertificate::Kind::Lift: return "lift";
        case UCertificate::Kind::Exhaustive: return "exhaustive";
    }
    return "?";
}

std::string to_json_line(const UCertificate& cert) {
    nlohmann::ordered_json j;
    j["n"] = cert.n;
    j["kind"] = to_string(cert.kind);
    if (cert.kind == UCertificate::Kind::Lift) {
        j["m"] = cert.m;
        j["p"] = cert.p;
        j["k"] = cert.k;
    }
    return j.dump();
}

namespace {

// Rule certificate given a membership oracle for smaller m.
template <typename IsMember>
std::optional<UCertificate> rule_certificate(std::uint64_t n, const GmTable& gm,
                                             const std::vector<PrimePower>& factors, IsMember&& is_member) {
    if (n == 1) return UCertificate{1, UCertificate::Kind::One};
    if (factors.size() == 1 && factors[0].exponent == 1) return UCertificate{n, UCertificate::Kind::Prime};
    // largest prime first: smallest cofactor m
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        std::uint64_t pk = 1;
        for (unsigned e = 0; e < it->exponent; ++e) pk *= it->prime;
        const std::uint64_t m = n / pk;
        if ((admits_lift_three_pow(m, it->prime) || gm.admits_lift(m, it->prime)) && is_member(m)) {
            return UCertificate{n, UCertificate::Kind::Lift, m, it->prime, it->exponent};
        }
    }
    return std::nullopt;
}

std::vector<PrimePower> factor_u64(std::uint64_t n) {
    const auto fi = FactoredInteger::factor(n);
    return {fi.factors().begin(), fi.factors().end()};
}

}  // namespace

std::optional<UCertificate> certify_u(std::uint64_t n, const GmTable& gm, std::uint64_t exact_cap) {
    if (n == 0) throw StructuralError("certify_u: n must be >= 1");
    auto cert = rule_certificate(n, gm, n == 1 ? std::vector<PrimePower>{} : factor_u64(n),
                                 [&](std::uint64_t m) { return certify_u(m, gm, exact_cap).has_value(); });
    if (cert) return cert;
    if (n <= exact_cap && decide_u_exact(n, exact_cap).member) return UCertificate{n, UCertificate::Kind::Exhaustive};
    return std::nullopt;
}

UCount count_u(std::uint64_t x, std::uint64_t exact_cap, unsigned workers, std::uint64_t memory_budget) {
    if (x == 0) throw StructuralError("count_u: x must be >= 1");
    if (exact_cap > kExactDecisionCap) {
        throw ResourceError("exact cap " + std::to_string(exact_cap) + " exceeds " + std::to_string(kExactDecisionCap));
    }
    if (x > kDefaultSieveCap) throw ResourceError("count_u: x above sieve cap");
    const GmTable gm(kDefaultGmTableSize);

    // smallest prime factor table for factoring every n <= x
    std::vector<std::uint32_t> spf(x + 1, 0);
    for (std::uint64_t i = 2; i <= x; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t j = i; j <= x; j += i) {
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
        }
    }
    auto factors_of = [&](std::uint64_t n) {
        std::vector<PrimePower> f;
        while (n > 1) {
            const std::uint64_t p = spf[n];
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.push_back({p, e});
        }
        return f;
    };

    const std::uint64_t exact_upto = std::min(x, exact_cap);
    std::vector<char> exact_member(exact_upto + 1, 0);
    parallel_for(exact_upto, workers, [&](std::size_t i) {
        exact_member[i + 1] = decide_u_exact(i + 1, exact_cap, memory_budget).member ? 1 : 0;
    });

    UCount out;
    out.complete_up_to = exact_upto;
    std::vector<char> member(x + 1, 0);
    auto is_member = [&](std::uint64_t m) { return member[m] != 0; };
    for (std::uint64_t n = 1; n <= x; ++n) {
        std::optional<UCertificate> cert = rule_certificate(n, gm, factors_of(n), is_member);
        if (n <= exact_upto) {
            if (!exact_member[n]) continue;
            if (!cert) cert = UCertificate{n, UCertificate::Kind::Exhaustive};
        }
        if (!cert) continue;
        member[n] = 1;
        out.members.push_back(*cert);
    }
    out.count = out.members.size();
    return out;
}

std::int64_t recursive_count_bound(std::uint64_t x, std::uint64_t y, const std::vector<std::uint64_t>& u_y) {
    if (y == 0) throw StructuralError("recursive_count_bound: y must be >= 1");
    std::uint64_t three_y = 1;
    for (std::uint64_t i = 0; i < y; ++i) {
        if (three_y > x / 3) throw StructuralError("recursive_count_bound requires x >= 3^y");
        three_y *= 3;
    }
    if (x < three_y) throw StructuralError("recursive_count_bound requires x >= 3^y");
    const PrimeCounter pc(x);
    std::int64_t total = 0;
    for (std::uint64_t m : u_y) {
        if (m == 0 || m > y) throw StructuralError("members must lie in [1, y]");
        total += static_cast<std::int64_t>(pc.pi(x / m));
    }
    return total - 2 * static_cast<std::int64_t>(three_y);
}

std::optional<double> iterated_log(double x, unsigned j) {
    for (unsigned i = 0; i < j; ++i) {
        if (!(x > 0)) return std::nullopt;
        x = std::log(x);
    }
    return x;
}

std::vector<LowerBoundRow> lower_bound_report(std::uint64_t max_n, unsigned k, std::uint64_t exact_cap,
                                              unsigned workers) {
    if (k < 3) throw StructuralError("lower_bound_report: k must be >= 3");
    const UCount u = count_u(max_n, exact_cap, workers);
    std::vector<LowerBoundRow> rows;
    std::size_t idx = 0;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        while (idx < u.members.size() && u.members[idx].n <= n) ++idx;
        LowerBoundRow row{n, idx, Natural(1) << idx, std::nullopt};
        const auto nd = static_cast<double>(n);
        if (const auto lk = iterated_log(nd, k); lk && *lk > 0) {
            double v = nd / std::log(nd);
            for (unsigned j = 3; j <= k; ++j) v *= *iterated_log(nd, j);
            row.growth_curve = v;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace efrac
