#pragma once

// The set U of integers N such that 1/N is not a signed sum
// sum_{n<N} w_n/n with w_n in {-1, 0, +1}. Every N in U doubles #E_N.

#include "efrac/arith.hpp"
#include "efrac/subsetsum.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace efrac {

inline constexpr std::uint64_t kExactDecisionCap = 35;

struct UDecision {
    bool member = false;
    /// When not a member: w_1..w_{n-1} in {-1,0,1} with sum w_k/k = 1/n.
    std::vector<int> witness;
};

/// Exact decision by meet-in-the-middle over the two halves of {1..n-1}.
/// Throws ResourceError above `cap` or when the half enumerations exceed
/// the memory budget.
UDecision decide_u_exact(std::uint64_t n, std::uint64_t cap = kExactDecisionCap,
                         std::uint64_t memory_budget = kDefaultMemoryBudget);

/// d_m = lcm(1..m) and g_m = d_m * H_m for m = 1..max_m.
class GmTable {
public:
    struct Entry {
        std::uint64_t m;
        Natural d;
        Natural g;
        bool below_three_pow;  ///< g_m < 3^m
    };

    explicit GmTable(std::uint64_t max_m);
    std::uint64_t max_m() const noexcept { return entries_.size(); }
    const Entry& at(std::uint64_t m) const;
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    /// p > g_m, the sharper lift threshold. Since g_m is nondecreasing, an m
    /// past the table is rejected unless p exceeds the last tabulated g.
    bool admits_lift(std::uint64_t m, std::uint64_t p) const;

private:
    std::vector<Entry> entries_;
};

GmTable g_m_table(std::uint64_t max_m);

inline constexpr std::uint64_t kDefaultGmTableSize = 64;

struct UCertificate {
    enum class Kind { One, Prime, Lift, Exhaustive };
    std::uint64_t n;
    Kind kind;
    std::uint64_t m = 0;  ///< Lift only: n = m p^k
    std::uint64_t p = 0;
    unsigned k = 0;

    friend bool operator==(const UCertificate&, const UCertificate&) = default;
};

std::string to_string(UCertificate::Kind kind);

/// One line of the member listing: {"n":..,"kind":..,"m":..,"p":..,"k":..}.
std::string to_json_line(const UCertificate& cert);

/// Rule-based certificate (1, prime, or a lift m p^k with certified m and
/// p > g_m), falling back to the exhaustive decision for n <= exact_cap.
/// An empty result does not mean n is outside U.
std::optional<UCertificate> certify_u(std::uint64_t n, const GmTable& gm, std::uint64_t exact_cap = 0);

/// Lift check with the weaker threshold p > 3^m.
bool admits_lift_three_pow(std::uint64_t m, std::uint64_t p);

struct UCount {
    std::uint64_t count = 0;
    std::vector<UCertificate> members;
    /// Every n <= complete_up_to was decided exactly.
    std::uint64_t complete_up_to = 0;
};

/// Lower bound on #U(x): n <= exact_cap decided exactly, larger n admitted
/// only with a rule certificate.
UCount count_u(std::uint64_t x, std::uint64_t exact_cap, unsigned workers = 1,
               std::uint64_t memory_budget = kDefaultMemoryBudget);

/// sum_{m in u_y} pi(x/m) - 2 * 3^y. Requires x >= 3^y.
std::int64_t recursive_count_bound(std::uint64_t x, std::uint64_t y, const std::vector<std::uint64_t>& u_y);

struct LowerBoundRow {
    std::uint64_t n;
    std::uint64_t u_count;        ///< certified lower bound on #U(n)
    Natural card_lower_bound;     ///< 2^{u_count} <= #E_n
    std::optional<double> growth_curve;  ///< (n / log n) prod_{j=3..k} log_j n
};

/// Iterated logarithm log_j x; empty when some intermediate value is <= 0.
std::optional<double> iterated_log(double x, unsigned j);

std::vector<LowerBoundRow> lower_bound_report(std::uint64_t max_n, unsigned k, std::uint64_t exact_cap,
                                              unsigned workers = 1);

}  // namespace efrac
