#include <doctest.h>

#include <random>

#include "bentforge/field.hpp"
#include "bentforge/registry.hpp"

using namespace bentforge;
using field::FieldCtx;

namespace {
registry::FieldRegistry& reg() {
    static registry::FieldRegistry r;
    return r;
}
}  // namespace

TEST_CASE("gf(2)[x] helpers") {
    CHECK(field::poly_degree(0) == -1);
    CHECK(field::poly_degree(0x5b) == 6);
    CHECK(field::poly_is_irreducible(0x7));      // x^2 + x + 1
    CHECK(field::poly_is_irreducible(0xb));      // x^3 + x + 1
    CHECK(field::poly_is_irreducible(0x5b));     // x^6 + x^4 + x^3 + x + 1
    CHECK_FALSE(field::poly_is_irreducible(0x5));   // (x + 1)^2
    CHECK_FALSE(field::poly_is_irreducible(0x6));   // x(x + 1)
    CHECK_FALSE(field::poly_is_irreducible(0x1b));  // x^4 + x^3 + x + 1 has root 1
}

TEST_CASE("registry defaults and overrides") {
    CHECK(reg().modulus_for(6) == 0x5b);
    CHECK(registry::lex_least_modulus(2) == 0x7);
    CHECK(registry::lex_least_modulus(3) == 0xb);
    CHECK(registry::lex_least_modulus(4) == 0x13);

    registry::FieldRegistry r2;
    CHECK_THROWS_AS(r2.load_json(nlohmann::json{{"4", "15"}}), std::invalid_argument);  // (x^2+x+1)^2
    CHECK_THROWS_AS(r2.load_json(nlohmann::json{{"zz", "13"}}), std::invalid_argument);
    CHECK_THROWS_AS(r2.load_json(nlohmann::json{{"25", "2000003"}}), std::invalid_argument);
    r2.load_json(nlohmann::json::object());  // empty: defaults only
    CHECK(r2.get(6)->modulus() == 0x5b);
    r2.load_json(nlohmann::json{{"6", "5b"}});  // explicit override equals the default
    CHECK(r2.get(6)->modulus() == 0x5b);
}

TEST_CASE("multiplication basics") {
    auto F16 = reg().get(4);
    for (uint32_t x = 0; x < 16; ++x) CHECK(F16->mul(x, 1) == x);

    auto F4 = reg().get(2);
    CHECK(F4->mul(2, 2) == 0x3);  // z * z = z + 1 after reducing by z^2 + z + 1
    CHECK(F4->inv(2) == 0x3);
    CHECK(F4->inv(1) == 1);
    CHECK_THROWS_AS(F4->inv(0), std::domain_error);

    auto F256 = reg().get(8);
    for (uint32_t x = 1; x < 256; ++x) CHECK(F256->mul(x, F256->inv(x)) == 1);
}

TEST_CASE("table path agrees with the reduce path") {
    for (int n : {2, 4, 6, 8}) {
        auto F = reg().get(n);
        for (uint32_t a = 0; a < F->size(); ++a)
            for (uint32_t b = a; b < F->size(); ++b) CHECK(F->mul(a, b) == F->mul_notable(a, b));
    }
    // and on a tower context
    auto T = FieldCtx::make_quadratic_extension(reg().get(6), 0x8);
    std::mt19937 rng(7);
    for (int i = 0; i < 2000; ++i) {
        uint32_t a = rng() % T->size(), b = rng() % T->size();
        CHECK(T->mul(a, b) == T->mul_notable(a, b));
    }
}

TEST_CASE("inverse is an involution on gf(2^12)") {
    auto F = reg().get(12);
    for (uint32_t x = 1; x < F->size(); ++x) CHECK(F->inv(F->inv(x)) == x);
}

TEST_CASE("absolute trace") {
    auto F4 = reg().get(2);
    CHECK(F4->trace(0) == 0);
    CHECK(F4->trace(2) == 1);  // z + z^2 = 1
    for (int n : {2, 3, 4, 6, 8, 12}) {
        auto F = reg().get(n);
        uint32_t zeros = 0;
        for (uint32_t x = 0; x < F->size(); ++x) zeros += F->trace(x) == 0;
        CHECK(zeros == F->size() / 2);  // balanced linear form
    }
}

TEST_CASE("trace linearity and Frobenius invariance") {
    for (int n : {2, 4, 6, 8}) {
        auto F = reg().get(n);
        for (uint32_t x = 0; x < F->size(); ++x)
            for (uint32_t y = 0; y < F->size(); ++y)
                CHECK(F->trace(x ^ y) == (F->trace(x) ^ F->trace(y)));
    }
    for (int n = 1; n <= 12; ++n) {
        auto F = reg().get(n);
        for (uint32_t x = 0; x < F->size(); ++x) CHECK(F->trace(F->sqr(x)) == F->trace(x));
    }
}

TEST_CASE("Lagrange: x^(2^n - 1) = 1") {
    for (int n = 1; n <= 12; ++n) {
        auto F = reg().get(n);
        for (uint32_t x = 1; x < F->size(); ++x) CHECK(F->pow(x, F->order()) == 1);
    }
}

TEST_CASE("relative trace") {
    auto F12 = reg().get(12);
    CHECK(F12->trace_rel(0, 2) == 0);
    CHECK(F12->trace_rel(0, 4) == 0);
    for (uint32_t x = 0; x < F12->size(); ++x)
        CHECK(F12->trace_rel(x, 12) == F12->trace(x));  // degenerate d = n

    // cube powers of units land in the order-4 subfield
    for (uint32_t y = 1; y < F12->size(); y += 97) {
        uint32_t x = F12->pow(y, F12->order() / 3);
        CHECK(F12->in_subfield(x, 2));
        int t = F12->trace_rel(x, 2);
        CHECK((t == 0 || t == 1));
    }
    // elements outside the subfield are rejected
    uint32_t outside = 0;
    for (uint32_t x = 2; x < F12->size(); ++x)
        if (!F12->in_subfield(x, 2)) {
            outside = x;
            break;
        }
    CHECK_THROWS_AS(F12->trace_rel(outside, 2), std::domain_error);
}

TEST_CASE("embeddings") {
    auto F2 = reg().get(1);
    auto F4 = reg().get(2);
    auto F16 = reg().get(4);
    auto F64 = reg().get(6);
    auto F4096 = reg().get(12);

    SUBCASE("prime subfield maps 1 to 1") {
        auto e = field::make_embedding(F2, F16);
        CHECK(e.embed(1) == 1);
    }

    SUBCASE("gf(4) into gf(16): image is a root of z^2 + z + 1") {
        auto e = field::make_embedding(F4, F16);
        uint32_t g = e.image_of_generator;
        CHECK(F16->add(F16->mul(g, g), F16->add(g, 1)) == 0);
        for (uint32_t x = 0; x < 4; ++x)
            for (uint32_t y = 0; y < 4; ++y) {
                CHECK(e.embed(F4->mul(x, y)) == F16->mul(e.embed(x), e.embed(y)));
                CHECK(e.embed(x ^ y) == (e.embed(x) ^ e.embed(y)));
            }
    }

    SUBCASE("gf(64) into gf(4096): multiplicative on all pairs") {
        auto e = field::make_embedding(F64, F4096);
        for (uint32_t x = 0; x < 64; ++x)
            for (uint32_t y = 0; y < 64; ++y)
                CHECK(e.embed(F64->mul(x, y)) == F4096->mul(e.embed(x), e.embed(y)));
    }

    SUBCASE("composition is a homomorphism") {
        auto e1 = field::make_embedding(F4, F16);
        auto e2 = field::make_embedding(F16, F4096);
        auto comp = [&](uint32_t x) { return e2.embed(e1.embed(x)); };
        for (uint32_t x = 0; x < 4; ++x)
            for (uint32_t y = 0; y < 4; ++y) {
                CHECK(comp(F4->mul(x, y)) == F4096->mul(comp(x), comp(y)));
                CHECK(comp(x ^ y) == (comp(x) ^ comp(y)));
            }
    }

    SUBCASE("preimage inverts the forward map") {
        auto e = field::make_embedding(F4, F16);
        for (uint32_t x = 0; x < 4; ++x) CHECK(e.preimage(e.embed(x)) == x);
        uint32_t non_image = 0;
        for (uint32_t y = 0; y < 16; ++y)
            if (!e.preimage(y)) {
                non_image = y;
                break;
            }
        CHECK_FALSE(e.preimage(non_image).has_value());
    }

    SUBCASE("degree must divide") {
        CHECK_THROWS_AS(field::make_embedding(reg().get(3), F16), std::invalid_argument);
    }
}

TEST_CASE("quadratic tower") {
    auto F64 = reg().get(6);
    uint32_t gamma = 0;
    while (F64->trace(gamma) != 1) ++gamma;
    auto T = FieldCtx::make_quadratic_extension(F64, gamma);
    CHECK(T->degree() == 12);

    SUBCASE("base elements keep their encodings") {
        auto e = field::make_embedding(F64, T);
        CHECK(e.image_of_generator == 2);
        for (uint32_t x = 0; x < 64; ++x) CHECK(e.embed(x) == x);
        for (uint32_t x = 0; x < 64; ++x)
            for (uint32_t y = 0; y < 64; ++y) CHECK(T->mul(x, y) == F64->mul(x, y));
    }

    SUBCASE("gamma with trace 0 is rejected") {
        uint32_t bad = 0;
        while (F64->trace(bad) != 0 || bad == 0) ++bad;
        CHECK_THROWS_AS(FieldCtx::make_quadratic_extension(F64, bad), std::invalid_argument);
    }

    SUBCASE("Lagrange and trace balance hold") {
        uint32_t zeros = 0;
        for (uint32_t x = 0; x < T->size(); ++x) zeros += T->trace(x) == 0;
        CHECK(zeros == T->size() / 2);
        std::mt19937 rng(3);
        for (int i = 0; i < 200; ++i) {
            uint32_t x = 1 + rng() % T->order();
            CHECK(T->pow(x, T->order()) == 1);
        }
    }
}

TEST_CASE("field element wrapper enforces context agreement") {
    auto F4 = reg().get(2);
    auto F16 = reg().get(4);
    field::FieldElement a(2, *F4), b(3, *F4), c(2, *F16);
    CHECK((a * b).v == F4->mul(2, 3));
    CHECK((a + b).v == 1);
    CHECK(a.inverse().v == 3);
    CHECK_THROWS_AS(a * c, std::invalid_argument);
    CHECK_THROWS_AS(field::FieldElement(9, *F4), std::invalid_argument);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(FieldCtx::make({0, 0x3}), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make({25, 0x3}), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make({4, 0x15}), std::invalid_argument);  // reducible
    CHECK_THROWS_AS(FieldCtx::make({4, 0x7}), std::invalid_argument);   // degree mismatch
}

TEST_CASE("large degrees stay usable without tables") {
    std::mt19937 rng(4);
    for (int n : {20, 24}) {
        auto F = reg().get(n);
        CHECK(F->mul(1, 123456 % F->size()) == 123456 % F->size());
        for (int i = 0; i < 40; ++i) {
            uint32_t x = 1 + rng() % F->order();
            uint32_t y = 1 + rng() % F->order();
            CHECK(F->mul(x, F->inv(x)) == 1);
            CHECK(F->mul(x, y) == F->mul_notable(x, y));
            CHECK(F->pow(x, F->order()) == 1);
            CHECK(F->trace(F->sqr(x)) == F->trace(x));
        }
    }
}
