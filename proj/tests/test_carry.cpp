#include <doctest.h>

#include <random>

#include "bentforge/carry.hpp"
#include "bentforge/expsums.hpp"

using namespace bentforge;
using carry::PeriodicBitSeq;

TEST_CASE("canonical digits") {
    auto d = PeriodicBitSeq::from_value(5, 4);
    CHECK(d.bits == std::vector<uint8_t>{1, 0, 1, 0});
    CHECK(d.value() == 5);
    CHECK(d.weight() == 2);
    CHECK(PeriodicBitSeq::from_value(15, 4).bits == std::vector<uint8_t>{0, 0, 0, 0});
    CHECK(PeriodicBitSeq::from_value(-1, 4).value() == 14);
}

TEST_CASE("single sequence with t = 1: digits pass through, carries vanish") {
    std::mt19937 rng(1);
    for (int i = 0; i < 50; ++i) {
        int n = 2 + rng() % 9;
        std::vector<uint8_t> bits(n);
        for (auto& b : bits) b = rng() & 1;
        PeriodicBitSeq a(n, bits);
        if (a.is_constant()) continue;
        auto sol = carry::solve_carries(n, {1}, {a});
        CHECK(sol.digits.bits == a.bits);
        for (int c : sol.carries) CHECK(c == 0);
    }
}

TEST_CASE("all-constant sequences are rejected") {
    PeriodicBitSeq zeros(4, {0, 0, 0, 0}), ones(4, {1, 1, 1, 1});
    CHECK_THROWS_AS(carry::solve_carries(4, {1, 1}, {zeros, ones}), std::invalid_argument);
    CHECK_THROWS_AS(carry::solve_carries(4, {2}, {ones}), std::invalid_argument);
    CHECK_THROWS_AS(carry::solve_carries(4, {0}, {zeros}), std::invalid_argument);
}

TEST_CASE("(1,-1,1) systems against integer arithmetic at n = 10") {
    std::mt19937 rng(42);
    int n = 10;
    int64_t order = (int64_t(1) << n) - 1;
    int64_t u = order / 3;
    PeriodicBitSeq useq = PeriodicBitSeq::from_value(u, n);
    for (int it = 0; it < 10000; ++it) {
        int64_t a = rng() % order, b = rng() % order;
        auto sol = carry::solve_carries(n, {1, -1, 1},
                                        {useq, PeriodicBitSeq::from_value(a, n),
                                         PeriodicBitSeq::from_value(b, n)});
        CHECK(util::mod_pos(sol.digits.value() - (u - a + b), order) == 0);
        for (int c : sol.carries) {
            CHECK(c >= -1);
            CHECK(c <= 1);
        }
    }
}

TEST_CASE("carry sum identity on the paired systems") {
    std::mt19937 rng(7);
    for (int it = 0; it < 2000; ++it) {
        int m = 1 + rng() % 4;
        int n = 2 * m;
        int64_t order = (int64_t(1) << n) - 1;
        auto sys = carry::solve_string_systems(m, rng() & 1, rng() % order, rng() % order);
        int64_t total = 0;
        for (int j = 0; j < n; ++j)
            total += sys.s_side.carries[j] + sys.t_side.carries[j] + sys.s_side.digits.bits[j] +
                     sys.t_side.digits.bits[j];
        CHECK(total == n);
    }
}

TEST_CASE("u has alternating digits for both choices") {
    for (int m = 1; m <= 8; ++m) {
        int n = 2 * m;
        int64_t order = (int64_t(1) << n) - 1;
        for (int uc = 0; uc < 2; ++uc) {
            auto u = PeriodicBitSeq::from_value((order / 3) * (uc ? 2 : 1), n);
            for (int j = 0; j < n; ++j) CHECK(u.bits[j] != u.at(j + 1));
        }
    }
}

TEST_CASE("weight identity equals the oracle, with matching slack") {
    for (int m = 1; m <= 4; ++m) {
        int64_t order = (int64_t(1) << (2 * m)) - 1;
        for (int uc = 0; uc < 2; ++uc)
            for (int64_t a = 0; a < order; ++a)
                for (int64_t b = 0; b < order; ++b) {
                    int64_t w = carry::weight_identity_value(m, uc, a, b);
                    int n = 2 * m;
                    int64_t u = (order / 3) * (uc ? 2 : 1);
                    int wtsum = expsums::weight_mod(a, n) + expsums::weight_mod(b, n) +
                                expsums::weight_mod(u - a + b, n) +
                                expsums::weight_mod(u + a - b, n);
                    CHECK(w == wtsum - n);
                    CHECK(carry::weight_identity_check(m, uc, a, b) ==
                          expsums::string_inequality_oracle(m, uc, a, b));
                    CHECK(w >= 0);
                }
    }
}

TEST_CASE("m = 1, a = b = 0: zero carries and zero slack") {
    auto sys = carry::solve_string_systems(1, 0, 0, 0);
    for (int j = 0; j < 2; ++j) {
        CHECK(sys.s_side.carries[j] == 0);
        CHECK(sys.t_side.carries[j] == 0);
    }
    CHECK(sys.weight_sum == 0);
}

TEST_CASE("a = b: slack is twice the weight of a") {
    for (int m : {2, 3}) {
        int64_t order = (int64_t(1) << (2 * m)) - 1;
        for (int64_t a = 0; a < order; a += 5)
            CHECK(carry::weight_identity_value(m, 0, a, a) ==
                  2 * expsums::weight_mod(a, 2 * m));
    }
}

TEST_CASE("perturbed carries never re-close") {
    std::mt19937 rng(1234);
    for (int it = 0; it < 500; ++it) {
        int n = 2 + rng() % 9;
        std::vector<uint8_t> bits1(n), bits2(n);
        for (auto& b : bits1) b = rng() & 1;
        for (auto& b : bits2) b = rng() & 1;
        PeriodicBitSeq a(n, bits1), b(n, bits2);
        if (a.is_constant() && b.is_constant()) continue;
        auto sol = carry::solve_carries(n, {1, 1}, {a, b});
        std::vector<int> rhs(n, 0);
        for (int j = 0; j < n; ++j) rhs[j] = a.bits[j] + b.bits[j];
        int j0 = rng() % n;
        int delta = (rng() & 1) ? 1 : -1;
        std::vector<int> alt = sol.carries;
        alt[j0] += delta;
        bool closes = true;
        for (int k = 1; k <= n && closes; ++k) {
            int j = (j0 + k) % n;
            int num = rhs[j] - int(sol.digits.bits[j]) + alt[util::mod_pos(j - 1, n)];
            if (num & 1) closes = false;
            else alt[j] = num >> 1;
        }
        closes = closes && alt[j0] == sol.carries[j0] + delta;
        CHECK_FALSE(closes);
    }
}
