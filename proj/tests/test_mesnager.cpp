#include <doctest.h>

#include <random>
#include <set>

#include "bentforge/mesnager.hpp"

using namespace bentforge;
using mesnager::BinomialSpec;

namespace {
registry::FieldRegistry& reg() {
    static registry::FieldRegistry r;
    return r;
}

const mesnager::FamilyCtx& fam2() {
    static auto f = mesnager::make_family(reg(), 2);
    return f;
}
}  // namespace

TEST_CASE("family construction") {
    CHECK_THROWS_AS(mesnager::make_family(reg(), 3), std::invalid_argument);
    CHECK_THROWS_AS(mesnager::make_family(reg(), 0), std::invalid_argument);
    const auto& f = fam2();
    CHECK(f.n == 4);
    CHECK(f.Fm->trace(f.gamma) == 1);
    CHECK(f.emb_m.image_of_generator == 2);  // subfield encodings are verbatim
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(mesnager::build_f(fam2(), BinomialSpec{2, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(mesnager::build_f(fam2(), BinomialSpec{2, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(mesnager::build_f(fam2(), BinomialSpec{4, 1, 1}), std::invalid_argument);
}

TEST_CASE("f(0) = 0 for every spec at m = 2") {
    for (uint32_t a = 1; a < 16; ++a)
        for (uint32_t b4 = 1; b4 <= 3; ++b4)
            CHECK(mesnager::build_f(fam2(), BinomialSpec{2, a, b4})(0) == 0);
}

TEST_CASE("b does not influence bentness at m = 2") {
    for (uint32_t a = 1; a < 16; ++a) {
        bool b1 = boolfun::is_bent(mesnager::build_f(fam2(), BinomialSpec{2, a, 1}));
        for (uint32_t b4 = 2; b4 <= 3; ++b4)
            CHECK(boolfun::is_bent(mesnager::build_f(fam2(), BinomialSpec{2, a, b4})) == b1);
    }
}

TEST_CASE("characterization rows at m = 2") {
    auto rows = mesnager::characterize(fam2());
    CHECK(rows.size() == 15);
    std::set<uint32_t> bent, k4;
    for (const auto& r : rows) {
        CHECK(r.consistent);
        if (r.bent) bent.insert(r.a);
        if (r.kloosterman == 4) k4.insert(r.a);
        int64_t mass = 0;
        for (const auto& [v, c] : r.spectrum_histogram) mass += c;
        CHECK(mass == 16);
    }
    CHECK(bent == k4);
    CHECK_FALSE(bent.empty());

    // bentness is invariant under a -> a^2
    for (const auto& r : rows) {
        uint32_t asq = fam2().Fn->sqr(r.a);
        bool bsq = boolfun::is_bent(mesnager::build_f(fam2(), BinomialSpec{2, asq, 1}));
        CHECK(bsq == r.bent);
    }

    // duals of the bent members are bent
    for (uint32_t a : bent)
        CHECK(boolfun::is_bent(boolfun::dual(mesnager::build_f(fam2(), BinomialSpec{2, a, 1}))));

    // threaded scan produces the identical table
    auto rows2 = mesnager::characterize(fam2(), 3);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows2[i].a == rows[i].a);
        CHECK(rows2[i].kloosterman == rows[i].kloosterman);
        CHECK(rows2[i].bent == rows[i].bent);
    }
}

TEST_CASE("search enumerates certified members in encoding order") {
    auto hits2 = mesnager::search_bent(fam2(), 100);
    auto rows = mesnager::characterize(fam2());
    size_t bent_count = 0;
    for (const auto& r : rows) bent_count += r.bent;
    CHECK(hits2.size() == bent_count);
    for (size_t i = 1; i < hits2.size(); ++i) CHECK(hits2[i - 1] < hits2[i]);
    CHECK(mesnager::search_bent(fam2(), 0).empty());

    auto fam6 = mesnager::make_family(reg(), 6);
    auto hits6 = mesnager::search_bent(fam6, 3);
    CHECK(hits6.size() == 3);
    CHECK(std::find(hits6.begin(), hits6.end(), 0x8) != hits6.end());  // a = z^3
    CHECK(mesnager::search_bent(fam6, 3, 4) == hits6);  // thread count does not change hits
}

TEST_CASE("kloosterman through the norm map") {
    // K of the norm depends only on the cyclotomic class of a
    const auto& f = fam2();
    for (uint32_t a = 1; a < 16; ++a)
        CHECK(mesnager::kloosterman_norm(f, a) == mesnager::kloosterman_norm(f, f.Fn->sqr(a)));
}

TEST_CASE("the m = 4 members are bent but not hyper-bent") {
    auto fam4 = mesnager::make_family(reg(), 4);
    auto hits = mesnager::search_bent(fam4, 1);
    REQUIRE(hits.size() == 1);
    auto f = mesnager::build_f(fam4, BinomialSpec{4, hits[0], 1});
    CHECK(boolfun::is_bent(f));
    CHECK_FALSE(boolfun::is_hyper_bent(f));
    CHECK(boolfun::is_hyper_bent(f, 3) == boolfun::is_hyper_bent(f, 1));  // threaded scan agrees
}

TEST_CASE("slow Walsh oracle agrees on the degree-12 example function") {
    auto fam6 = mesnager::make_family(reg(), 6);
    uint32_t a = fam6.emb_m.embed(fam6.Fm->pow(2, 3));
    auto f = mesnager::build_f(fam6, BinomialSpec{6, a, 1});
    auto s = boolfun::walsh_transform(f);
    std::mt19937 rng(31);
    for (int i = 0; i < 24; ++i) {
        uint32_t b = rng() % fam6.Fn->size();
        CHECK(boolfun::walsh_at(f, b) == s.values[b]);
    }
}

TEST_CASE("worked example end to end") {
    auto rep = mesnager::reproduce_example(reg());
    for (const auto& a : rep.assertions) {
        INFO(a.name, ": ", a.detail);
        CHECK(a.pass);
    }
    CHECK(rep.assertions.size() == 5);
    CHECK(rep.manifest["m"] == 6);
    // the dual must match under the canonical embedding, not a fallback
    for (const auto& a : rep.assertions)
        if (a.name == "dual_matches_expression") CHECK(a.detail == "canonical embedding");
}

TEST_CASE("exactly one conjugate interpretation of z matches the dual") {
    auto fam6 = mesnager::make_family(reg(), 6);
    const auto& Fn = *fam6.Fn;
    uint32_t a = fam6.emb_m.embed(fam6.Fm->pow(2, 3));
    auto d = boolfun::dual(mesnager::build_f(fam6, BinomialSpec{6, a, 1}));
    std::vector<uint32_t> roots;
    for (uint32_t y : field::subfield_elements(Fn, 6)) {
        uint32_t h = 0;
        for (int i = 6; i >= 0; --i) h = Fn.mul(h, y) ^ uint32_t((fam6.Fm->modulus() >> i) & 1);
        if (h == 0) roots.push_back(y);
    }
    REQUIRE(roots.size() == 6);
    CHECK(roots[0] == 2);  // ascending scan puts the verbatim generator first
    int matches = 0;
    for (uint32_t r : roots) {
        auto expr = mesnager::detail::dual_expression(Fn, r);
        bool same = true;
        for (uint32_t x = 0; x < Fn.size() && same; ++x) same = expr.evaluate(Fn, x) == d(x);
        matches += same;
    }
    CHECK(matches == 1);
}

TEST_CASE("rows serialize to json") {
    auto j = mesnager::rows_to_json(mesnager::characterize(fam2()));
    CHECK(j.size() == 15);
    CHECK(j[0].contains("a"));
    CHECK(j[0].contains("kloosterman"));
    CHECK(j[0].contains("bent"));
}
