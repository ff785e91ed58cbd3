#include <doctest.h>

#include <random>

#include "cbc/bounds.hpp"
#include "cbc/cwc.hpp"
#include "oracles.hpp"

using namespace cbc;

namespace {

bool has_source(const BoundResult& b, Regime r) {
    return std::find(b.sources.begin(), b.sources.end(), r) != b.sources.end();
}

BigInt top_of(int k, int m) { return BigInt(k - 1) * binomial(m, k - 1); }

// Direct evaluation of the i-th inequality.
bool inequality_direct(const std::vector<std::uint64_t>& a, int m, int i) {
    oracle::Z lhs = 0;
    for (int j = 1; j <= i; ++j) lhs += oracle::choose(m - j, i - j) * a[static_cast<std::size_t>(j - 1)];
    return lhs <= oracle::Z(i) * oracle::choose(m, i);
}

}  // namespace

TEST_CASE("u_value") {
    CHECK(u_value(6, 4, 3) == 60);
    CHECK(u_value(6, 4, 1) == 6);
    CHECK(u_value(6, 4, 2) == 15);
    CHECK(u_value(8, 5, 2) == Rational(56, 3));
    for (int m = 2; m <= 12; ++m) {
        for (int k = 2; k <= m; ++k) {
            CHECK(u_value(m, k, 1) == m);
            for (int c = 1; c <= k - 1; ++c) CHECK(u_value(m, k, c) == oracle::u_value(m, k, c));
        }
    }
    CHECK_THROWS_AS(u_value(6, 4, 0), ParamError);
    CHECK_THROWS_AS(u_value(6, 4, 4), ParamError);
}

TEST_CASE("check_inequality") {
    Profile table{4, {0, 5, 38, 0}};
    CHECK(check_inequality(table, 6, 3));
    CHECK(check_inequality(table, 6, 1));
    CHECK(check_inequality(table, 6, 2));

    CHECK_FALSE(check_inequality(Profile{2, {7, 0}}, 6, 1));
    CHECK(check_inequality(Profile{2, {6, 0}}, 6, 1));

    const Profile zero{5, {0, 0, 0, 0, 0}};
    for (int i = 1; i <= 4; ++i) CHECK(check_inequality(zero, 8, i));
}

TEST_CASE("b_value") {
    CHECK(b_value(43, 4, 6, 3) == Rational(370, 3));
    CHECK(b_value(60, 4, 6, 3) == 180);
    CHECK(b_value(6, 4, 6, 1) == 6);
}

TEST_CASE("lower_bound examples") {
    const BoundResult a = lower_bound(43, 4, 6);
    CHECK(a.lower == 124);
    CHECK(a.chosen_c == 3);
    CHECK(lower_bound(60, 4, 6).lower == 180);
    CHECK(lower_bound(54, 5, 8).lower == 161);
    CHECK_THROWS_AS(lower_bound(61, 4, 6), RangeError);
    CHECK_THROWS_AS(lower_bound(5, 1, 6), ParamError);
}

TEST_CASE("known_n examples") {
    const BoundResult a = known_n(Params{7, 4, 6});
    REQUIRE(a.exact);
    CHECK(*a.exact == 10);
    CHECK(has_source(a, Regime::OneExtraItem));

    const BoundResult b = known_n(Params{6, 3, 4});
    REQUIRE(b.exact);
    CHECK(*b.exact == 9);
    CHECK(has_source(b, Regime::TwoExtraItems));

    const BoundResult c = known_n(Params{5, 3, 3});
    REQUIRE(c.exact);
    CHECK(*c.exact == 9);
    CHECK(has_source(c, Regime::SquareLayout));

    const BoundResult d = known_n(Params{43, 4, 6});
    REQUIRE(d.exact);
    CHECK(*d.exact == 124);
    CHECK(d.lower == 124);
    CHECK(has_source(d, Regime::DeletionRange));

    const BoundResult e = known_n(Params{60, 4, 6});
    REQUIRE(e.exact);
    CHECK(*e.exact == 180);
    CHECK(has_source(e, Regime::Saturated));
    CHECK(has_source(e, Regime::DeletionRange));

    const BoundResult f = known_n(Params{54, 5, 8});
    CHECK_FALSE(f.exact);
    CHECK(f.lower == 161);
    REQUIRE(f.upper);
    CHECK(*f.upper == 162);

    const BoundResult g = known_n(Params{61, 4, 6});
    REQUIRE(g.exact);
    CHECK(*g.exact == 4 * 61 - 60);

    const BoundResult huge = known_n(Params{BigInt("1000000000000000000000"), 4, 6});
    REQUIRE(huge.exact);
    CHECK(*huge.exact == BigInt("4000000000000000000000") - 60);
}

TEST_CASE("uniform_n_ceiling and code bounds") {
    CHECK(uniform_n_ceiling(6, 3, 4) == 60);
    for (int m = 2; m <= 9; ++m) CHECK(uniform_n_ceiling(m, 1, 4) == m);
    CHECK(uniform_n_ceiling(8, 2, 5) == Rational(56, 3));

    CHECK(cwc_lower_bound(5, 4, 2) == 2);
    CHECK(cwc_lower_bound(8, 4, 2) == Rational(7, 2));
    for (int m = 2; m <= 10; ++m) {
        for (int w = 1; w <= m; ++w) CHECK(cwc_lower_bound(m, 2, w) == binomial(m, w));
    }
    // Distance 2d divides by q^(d-1), q the least prime power at least m.
    CHECK(cwc_lower_bound(6, 6, 3) == Rational(20, 49));
    CHECK(cwc_lower_bound(8, 6, 3) == Rational(56, 64));
    CHECK(cwc_lower_bound(10, 8, 4) == Rational(210, 1331));

    CHECK(least_prime_power_at_least(1) == 2);
    CHECK(least_prime_power_at_least(6) == 7);
    CHECK(least_prime_power_at_least(8) == 8);
    CHECK(least_prime_power_at_least(10) == 11);
    CHECK(least_prime_power_at_least(14) == 16);
    CHECK(least_prime_power_at_least(24) == 25);
}

TEST_CASE("property: a passing higher inequality implies the lower one") {
    std::mt19937_64 rng(21);
    std::size_t checked = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 8);
        const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m - 2));
        std::vector<std::uint64_t> a(static_cast<std::size_t>(m));
        for (auto& v : a) v = rng() % 6;
        const Profile p{m, a};
        const bool higher = check_inequality(p, m, i + 1);
        const bool lower = check_inequality(p, m, i);
        CHECK(higher == inequality_direct(a, m, i + 1));
        CHECK(lower == inequality_direct(a, m, i));
        if (higher) {
            CHECK(lower);
            ++checked;
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("property: ratio inequality between adjacent sizes") {
    using oracle::Q;
    for (int m = 2; m <= 12; ++m) {
        for (int k = 2; k <= m; ++k) {
            for (int c = 1; c < k; ++c) {
                for (int i = 0; i <= k - 1; ++i) {
                    const Q lhs = Q(oracle::choose(m - i, k - 1 - i)) / Q(oracle::choose(m - c, k - 1 - c)) - 1;
                    const Q rhs = Q((m - k + 1) * (c - i)) / Q(k - c);
                    CHECK(lhs >= rhs);
                    if (i == c || i == c - 1) CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("property: b is maximized at the least c with n <= U") {
    for (int m = 3; m <= 10; ++m) {
        for (int k = 2; k <= m - 1; ++k) {
            const auto top = top_of(k, m).convert_to<std::int64_t>();
            for (std::int64_t n = 1; n <= top; ++n) {
                int least = 0;
                for (int c = 1; c <= k - 1 && least == 0; ++c) {
                    if (oracle::Q(n) <= oracle::u_value(m, k, c)) least = c;
                }
                REQUIRE(least > 0);
                const Rational best = b_value(n, k, m, least);
                for (int c = 1; c <= k - 1; ++c) CHECK(b_value(n, k, m, c) <= best);

                const BoundResult lb = lower_bound(n, k, m);
                CHECK(lb.chosen_c == least);
                CHECK(lb.lower == oracle::counting_bound(n, k, m));
                CHECK(lb.lower == ceil_of(best));
            }
        }
    }
}

TEST_CASE("lower bound at m = k") {
    for (int k = 2; k <= 8; ++k) {
        const auto top = top_of(k, k).convert_to<std::int64_t>();
        for (std::int64_t n = 1; n <= top; ++n) CHECK(lower_bound(n, k, k).lower == oracle::counting_bound(n, k, k));
    }
}

TEST_CASE("property: overlapping regimes agree") {
    for (int m = 3; m <= 12; ++m) {
        for (int k = 3; k <= m; ++k) {
            const BigInt top = top_of(k, m);
            const BoundResult r = known_n(Params{top, k, m});
            REQUIRE(r.exact);
            CHECK(*r.exact == BigInt(k) * top - top);
            CHECK(oracle::deletion_formula(top.convert_to<std::int64_t>(), k, m) ==
                  (BigInt(k) * top - top).convert_to<std::int64_t>());
        }
    }
    for (int k = 2; k <= 10; ++k) {
        const BoundResult r = known_n(Params{k + 1, k, k});
        REQUIRE(r.exact);
        CHECK(*r.exact == 2 * k);
        CHECK(has_source(r, Regime::SquareLayout));
        CHECK(has_source(r, Regime::OneExtraItem));
    }
}

TEST_CASE("property: known_n matches closed forms on a small grid") {
    for (int m = 2; m <= 9; ++m) {
        for (int k = 2; k <= m; ++k) {
            const auto top = top_of(k, m).convert_to<std::int64_t>();
            const auto base = oracle::choose64(m, k - 2);
            for (std::int64_t n = 1; n <= top + 5; ++n) {
                BoundResult r;
                REQUIRE_NOTHROW(r = known_n(Params{n, k, m}));
                if (r.exact) {
                    CHECK(r.lower <= *r.exact);
                    if (r.upper) CHECK(*r.upper == *r.exact);
                } else if (r.upper) {
                    CHECK(r.lower < *r.upper);
                }

                std::int64_t expected = oracle::small_regime_value(n, k, m);
                if (expected < 0 && n >= top) expected = k * n - top;
                if (expected < 0 && k >= 3 && n >= base) expected = oracle::deletion_formula(n, k, m);
                if (expected >= 0) {
                    REQUIRE(r.exact);
                    CHECK(*r.exact == expected);
                }
                if (n <= top && k <= m - 1) {
                    CHECK(r.lower >= oracle::counting_bound(n, k, m));
                }
                if (k >= 5 && n < base && has_source(r, Regime::CodeRange)) {
                    const std::int64_t q = m - k + 1;
                    const std::int64_t d = base - n;
                    CHECK(d <= q * static_cast<std::int64_t>(distance4_code_size(m, k - 3)));
                    if (2 * (d % q) < q) {
                        REQUIRE(r.exact);
                        CHECK(*r.exact == oracle::code_formula(n, k, m));
                    } else if (!r.exact) {
                        REQUIRE(r.upper);
                        CHECK(*r.upper == oracle::code_formula(n, k, m));
                        CHECK(*r.upper - r.lower <= 1);
                    }
                }
            }
        }
    }
}
