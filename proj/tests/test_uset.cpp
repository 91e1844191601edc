#include "efrac/errors.hpp"
#include "efrac/uset.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace efrac;

namespace {

// sum w_k / k over k = 1..n-1.
Fraction weighted_sum(const std::vector<int>& w) {
    Fraction s(0);
    for (std::size_t k = 1; k <= w.size(); ++k) s += Fraction(w[k - 1]) * Fraction::unit(k);
    return s;
}

}  // namespace

TEST_CASE("exact decision examples") {
    CHECK(decide_u_exact(1).member);
    CHECK(decide_u_exact(4).member);
    const auto six = decide_u_exact(6);
    CHECK_FALSE(six.member);
    REQUIRE(six.witness.size() == 5);
    CHECK(weighted_sum(six.witness) == Fraction::unit(6));
    CHECK_THROWS_AS(decide_u_exact(40), ResourceError);
    CHECK_THROWS_AS(decide_u_exact(0), StructuralError);
}

TEST_CASE("exact decision agrees with the 3^(n-1) scan") {
    for (std::uint64_t n = 1; n <= 12; ++n) {
        CHECK_MESSAGE(decide_u_exact(n).member == oracle::brute_in_u(n), "n=" << n);
    }
}

TEST_CASE("witnesses are valid") {
    for (std::uint64_t n = 2; n <= 26; ++n) {
        const auto d = decide_u_exact(n);
        if (d.member) continue;
        REQUIRE(d.witness.size() == n - 1);
        for (int w : d.witness) CHECK((w >= -1 && w <= 1));
        CHECK_MESSAGE(weighted_sum(d.witness) == Fraction::unit(n), "n=" << n);
    }
}

TEST_CASE("members up to 10") {
    std::vector<std::uint64_t> members;
    for (std::uint64_t n = 1; n <= 10; ++n) {
        if (decide_u_exact(n).member) members.push_back(n);
    }
    CHECK(members == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 7, 8, 9, 10});
}

TEST_CASE("g_m table") {
    const auto t = g_m_table(24);
    CHECK(t.at(1).d == Natural(1));
    CHECK(t.at(1).g == Natural(1));
    CHECK(t.at(2).g == Natural(3));
    CHECK(t.at(3).d == Natural(6));
    CHECK(t.at(3).g == Natural(11));
    for (std::uint64_t m = 1; m <= 24; ++m) {
        const mpz_class d = oracle::fold_lcm_big(m);
        mpq_class h = 0;
        for (std::uint64_t j = 1; j <= m; ++j) h += mpq_class(1, j);
        const mpq_class g = h * d;
        CHECK(g.get_den() == 1);
        CHECK(t.at(m).g.mpz() == g.get_num());
        CHECK(t.at(m).below_three_pow);
    }
    CHECK_THROWS(t.at(0));
    CHECK_THROWS(t.at(25));
    CHECK(t.admits_lift(2, 5));
    CHECK_FALSE(t.admits_lift(2, 3));
    CHECK(admits_lift_three_pow(2, 11));
    CHECK_FALSE(admits_lift_three_pow(2, 7));
    CHECK_FALSE(admits_lift_three_pow(200, 1'000'000'007));
}

TEST_CASE("certificates") {
    const auto gm = g_m_table(kDefaultGmTableSize);
    CHECK(certify_u(1, gm)->kind == UCertificate::Kind::One);
    CHECK(certify_u(13, gm)->kind == UCertificate::Kind::Prime);
    const auto ten = certify_u(10, gm);
    REQUIRE(ten.has_value());
    CHECK(*ten == UCertificate{10, UCertificate::Kind::Lift, 2, 5, 1});
    CHECK_FALSE(certify_u(6, gm, 0).has_value());
    CHECK_FALSE(certify_u(6, gm, 30).has_value());
    const auto c = certify_u(10, gm);
    CHECK(to_json_line(*c) == R"({"n":10,"kind":"lift","m":2,"p":5,"k":1})");
    CHECK(to_json_line(*certify_u(13, gm)) == R"({"n":13,"kind":"prime"})");
}

TEST_CASE("certified members pass the exact decision") {
    const auto gm = g_m_table(kDefaultGmTableSize);
    for (std::uint64_t n = 1; n <= 30; ++n) {
        const auto cert = certify_u(n, gm);
        if (cert) CHECK_MESSAGE(decide_u_exact(n).member, "n=" << n);
    }
}

TEST_CASE("counting U(x)") {
    CHECK(count_u(1, 30).count == 1);
    const auto ten = count_u(10, 10);
    CHECK(ten.count == 9);
    CHECK(ten.complete_up_to == 10);
    const auto hundred = count_u(100, 30, 2);
    CHECK(hundred.count >= 1 + 25);
    CHECK(hundred.complete_up_to == 30);
    for (std::size_t i = 1; i < hundred.members.size(); ++i) CHECK(hundred.members[i - 1].n < hundred.members[i].n);
    const auto serial = count_u(100, 30, 1);
    CHECK(serial.members == hundred.members);
}

TEST_CASE("recursive count bound") {
    CHECK(recursive_count_bound(100, 1, {1}) == 19);
    CHECK(recursive_count_bound(3, 1, {1}) == -4);
    CHECK(recursive_count_bound(10000, 2, {1, 2}) == 1229 + 669 - 18);
    CHECK_THROWS_AS(recursive_count_bound(8, 2, {1, 2}), StructuralError);
}

TEST_CASE("lower bound report") {
    const auto rows = lower_bound_report(12, 3, 12);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].card_lower_bound == Natural(2));
    CHECK(rows[5].u_count == 5);
    CHECK(rows[5].card_lower_bound == Natural(32));
    CHECK(rows[6].u_count == 6);
    CHECK(rows[6].card_lower_bound == Natural(64));
    CHECK_THROWS_AS(lower_bound_report(12, 2, 12), StructuralError);
    CHECK(iterated_log(std::exp(1.0), 1).value() == doctest::Approx(1.0));
    CHECK_FALSE(iterated_log(1.0, 2).has_value());
}

TEST_CASE("signed sums below p are p-integral") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const std::int64_t den = static_cast<std::int64_t>(oracle::fold_lcm(p - 1));
        std::vector<int> w(p - 1, -1);
        for (;;) {
            std::int64_t s = 0;
            for (std::uint64_t k = 1; k < p; ++k) s += w[k - 1] * (den / static_cast<std::int64_t>(k));
            // den is prime to p, so s / den is p-integral and never 1/p.
            CHECK(den % static_cast<std::int64_t>(p) != 0);
            CHECK(s * static_cast<std::int64_t>(p) != den);
            std::size_t i = 0;
            while (i < w.size() && w[i] == 1) w[i++] = -1;
            if (i == w.size()) break;
            ++w[i];
        }
    }
}

TEST_CASE("recursive bound stays below the certified count") {
    const auto u3 = count_u(3, 3);
    std::vector<std::uint64_t> members3;
    for (const auto& c : u3.members) members3.push_back(c.n);
    for (std::uint64_t x : {27, 100, 1000, 20000}) {
        const auto count = count_u(x, 20);
        for (std::uint64_t y = 1; y <= 3; ++y) {
            std::uint64_t three = 1;
            for (std::uint64_t i = 0; i < y; ++i) three *= 3;
            if (x < three) continue;
            std::vector<std::uint64_t> uy;
            for (auto m : members3) {
                if (m <= y) uy.push_back(m);
            }
            CHECK(recursive_count_bound(x, y, uy) <= static_cast<std::int64_t>(count.count));
        }
    }
}
