#include <doctest.h>

#include <random>

#include "bentforge/padic.hpp"
#include "bentforge/registry.hpp"

using namespace bentforge;
using padic::PadicCtx;

namespace {
registry::FieldRegistry& reg() {
    static registry::FieldRegistry r;
    return r;
}
}  // namespace

TEST_CASE("context validation") {
    CHECK_THROWS_AS(PadicCtx(reg().get(4), 0), std::invalid_argument);
    CHECK_THROWS_AS(PadicCtx(reg().get(4), 40), std::invalid_argument);
    uint32_t gamma = 1;
    while (reg().get(4)->trace(gamma) != 1) ++gamma;
    auto T = field::FieldCtx::make_quadratic_extension(reg().get(4), gamma);
    CHECK_THROWS_AS(PadicCtx(T, 8), std::invalid_argument);  // needs a polynomial modulus
}

TEST_CASE("teichmuller lifts") {
    PadicCtx P(reg().get(4), 8);
    CHECK(P.teichmuller(1) == P.scalar(1));
    CHECK_THROWS_AS(P.teichmuller(0), std::domain_error);

    SUBCASE("multiplicative on all pairs of gf(16)*") {
        for (uint32_t x = 1; x < 16; ++x)
            for (uint32_t y = 1; y < 16; ++y)
                CHECK(P.mul(P.teichmuller(x), P.teichmuller(y)) ==
                      P.teichmuller(P.field().mul(x, y)));
    }

    SUBCASE("order divides q - 1 in gf(64), M = 10") {
        PadicCtx P64(reg().get(6), 10);
        for (uint32_t x = 1; x < 64; ++x) {
            padic::PadicElement acc = P64.scalar(1);
            for (int i = 0; i < 63; ++i) acc = P64.mul(acc, P64.teichmuller(x));
            CHECK(acc == P64.scalar(1));
        }
    }
}

TEST_CASE("reduction mod 2 is a ring homomorphism") {
    PadicCtx P(reg().get(6), 12);
    const auto& F = P.field();
    std::mt19937 rng(17);
    for (int i = 0; i < 300; ++i) {
        uint32_t x = 1 + rng() % 63, y = 1 + rng() % 63;
        CHECK(P.reduce_mod2(P.mul(P.teichmuller(x), P.teichmuller(y))) == F.mul(x, y));
        CHECK(P.reduce_mod2(P.add(P.trivial_lift(x), P.trivial_lift(y))) == (x ^ y));
    }
}

TEST_CASE("gauss sums: G(0), Frobenius invariance, Stickelberger, valuation") {
    for (int n : {4, 6, 8}) {
        PadicCtx P(reg().get(n), n + 4);
        CHECK(P.gauss_sum(0) == P.scalar(-1));
        for (int64_t k = 0; k + 1 < int64_t(P.q()); ++k) {
            CHECK(P.gauss_sum(2 * k) == P.gauss_sum(k));  // Frobenius invariance
            CHECK(P.stickelberger_check(k));
            CHECK(P.v2(P.gauss_sum(k)) == expsums::weight_mod(k, n));
        }
    }
}

TEST_CASE("interpolation relation") {
    PadicCtx P(reg().get(4), 12);
    CHECK(P.interpolation_check());

    SUBCASE("specialization at x = 1: sum_k G(k) = (q-1)(-1)^Tr(1)") {
        padic::PadicElement s = P.zero();
        for (int64_t k = 0; k + 1 < int64_t(P.q()); ++k) s = P.add(s, P.gauss_sum(k));
        int64_t want = (P.field().trace(1) ? -1 : 1) * int64_t(P.q() - 1);
        CHECK(s == P.scalar(want));
    }
}

TEST_CASE("interpolation over gf(64)") {
    PadicCtx P(reg().get(6), 12);
    CHECK(P.interpolation_check());
}

TEST_CASE("subfield gauss sums and davenport-hasse") {
    PadicCtx P(reg().get(4), 16);
    CHECK(P.subfield_gauss_sum(0) == P.scalar(-1));
    int64_t sub_order = (int64_t(1) << 2) - 1;
    for (int64_t i = 0; i < sub_order; ++i) {
        CHECK(P.subfield_gauss_sum(i) == P.subfield_gauss_sum(i + sub_order));  // periodicity
        CHECK(P.davenport_hasse_check(i));
    }
    PadicCtx P64(reg().get(6), 16);
    for (int64_t i = 0; i < 7; ++i) CHECK(P64.davenport_hasse_check(i));
}

TEST_CASE("kloosterman-gauss lemma matches the exact integer sum") {
    for (int m : {2, 3}) {
        PadicCtx P(reg().get(2 * m), 16);
        for (uint32_t a_hat : P.subfield_units()) {
            CHECK(P.kloosterman_gauss_identity_check(a_hat));
            // cross-check the left side against the expsums Kloosterman value
            int64_t lhs = expsums::kloosterman_in_subfield(P.field(), a_hat) - 1;
            padic::PadicElement rhs = P.zero();
            int64_t so = (int64_t(1) << m) - 1;
            for (int64_t i = 0; i < so; ++i) {
                auto gb = P.subfield_gauss_sum(i);
                int64_t e = util::mod_pos(((int64_t(1) << m) + 1) * i, P.q() - 1);
                rhs = P.add(rhs, P.mul(P.mul(gb, gb), P.teichmuller(P.field().pow(a_hat, e))));
            }
            rhs = P.scalar_mul(rhs, expsums::odd_inverse_mod_2pow(uint64_t(so), P.precision()));
            CHECK(rhs == P.scalar(lhs));
        }
        CHECK_THROWS_AS(P.kloosterman_gauss_identity_check(0), std::domain_error);
    }
}

TEST_CASE("dillon gauss identity") {
    PadicCtx P(reg().get(4), 16);
    for (uint32_t a = 1; a < 16; a += 2)
        for (uint32_t c = 1; c < 16; c += 3) {
            CHECK(P.dillon_gauss_identity_check(a, c));
            // reducing the two sides mod 2^(m+1) reproduces the congruence
            int64_t B = expsums::dillon_sum(P.field(), a, c);
            int64_t K = expsums::kloosterman_in_subfield(P.field(), P.field().pow(a, 5));
            CHECK(util::mod_pos(B, 8) == util::mod_pos(K + 3, 8));
        }
}

TEST_CASE("identities are precision-monotone") {
    PadicCtx hi(reg().get(4), 14), lo(reg().get(4), 8);
    for (uint32_t x = 1; x < 16; ++x) {
        auto a = hi.teichmuller(x), b = lo.teichmuller(x);
        for (int i = 0; i < 4; ++i) CHECK((a.c[i] & 0xff) == b.c[i]);
    }
    for (int64_t k = 0; k < 15; ++k) {
        auto a = hi.gauss_sum(k), b = lo.gauss_sum(k);
        for (int i = 0; i < 4; ++i) CHECK((a.c[i] & 0xff) == b.c[i]);
        CHECK(lo.stickelberger_check(k));  // wt(k) + 1 <= 5 < 8 bits
    }
    CHECK(lo.interpolation_check());
    CHECK(lo.davenport_hasse_check(1));
}

TEST_CASE("the maximum supported precision stays exact") {
    PadicCtx P(reg().get(4), 28);
    CHECK(P.interpolation_check());
    for (int64_t k = 0; k < 15; ++k) CHECK(P.stickelberger_check(k));
    CHECK(P.gauss_sum(0) == P.scalar(-1));
}
