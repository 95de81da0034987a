// The full verification pipeline: nine exact checks covering the digraph
// certificate, the weight inequality, the worked degree-12 example, the
// characterization sweeps, Stickelberger and the Gauss-sum identities, the
// congruence suites, the carry theorem and the spectral properties. Each
// check reports pass/fail, a detail string and its wall-clock time; both the
// CLI and the acceptance test binary run these.
#ifndef BENTFORGE_VERIFY_HPP
#define BENTFORGE_VERIFY_HPP

#include <chrono>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bentforge/boolfun.hpp"
#include "bentforge/carry.hpp"
#include "bentforge/certigraph.hpp"
#include "bentforge/expsums.hpp"
#include "bentforge/field.hpp"
#include "bentforge/mesnager.hpp"
#include "bentforge/padic.hpp"
#include "bentforge/registry.hpp"

namespace bentforge::verify {

struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
    std::vector<std::string> modules;
};

namespace detail {

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline void finish(CheckResult& r, const Timer& t, bool ok, const std::string& detail) {
    r.seconds = t.seconds();
    bool in_time = r.seconds < r.limit_seconds;
    r.pass = ok && in_time;
    r.detail = detail + (in_time ? "" : " [over time budget]");
}

}  // namespace detail

// 1. Digraph certification: counts, SCC sizes, weight histogram, potential
//    certificate accepted by the independent verifier.
inline CheckResult check_digraph(const registry::FieldRegistry&, int) {
    CheckResult r;
    r.id = "C1";
    r.name = "digraph-certification";
    r.limit_seconds = 1.0;
    r.modules = {"certigraph"};
    detail::Timer t;
    auto g = certigraph::build_graph();
    bool ok = g.vertices.size() == 72 && g.arcs.size() == 288;
    for (const auto& adj : g.out) ok = ok && adj.size() == 4;
    auto comps = certigraph::components_from_labels(certigraph::scc_labels(g));
    size_t big = 0;
    int singles = 0;
    for (const auto& c : comps) {
        big = std::max(big, c.size());
        if (c.size() == 1) ++singles;
    }
    ok = ok && comps.size() == 33 && big == 40 && singles == 32;
    std::string hist_str;
    for (const auto& c : comps) {
        if (c.size() != big) continue;
        auto H = certigraph::induced_subgraph(g, c);
        std::map<int, int> want{{-1, 8}, {0, 32}, {1, 80}, {2, 32}, {3, 8}};
        auto hist = certigraph::weight_histogram(H);
        ok = ok && hist == want;
        for (const auto& [w, cnt] : hist) hist_str += std::to_string(w) + ":" + std::to_string(cnt) + " ";
        auto res = certigraph::certify_nonnegative(H);
        ok = ok && res.ok && certigraph::verify_certificate(H, res.certificate);
        auto mmc = certigraph::min_cycle_mean(H);
        ok = ok && mmc && mmc->first >= 0;
    }
    detail::finish(r, t, ok,
                   "72 vertices / 33 sccs / H size 40 with weights " + hist_str +
                       "/ certificate verified");
    return r;
}

// 2. Weight inequality: brute-force oracle for m = 1..5 and the graph-walk
//    correspondence for m <= 4.
inline CheckResult check_weight_inequality(const registry::FieldRegistry&, int) {
    CheckResult r;
    r.id = "C2";
    r.name = "weight-inequality";
    r.limit_seconds = 60.0;
    r.modules = {"expsums", "carry", "certigraph"};
    detail::Timer t;
    bool ok = true;
    uint64_t oracle_count = 0;
    for (int m = 1; m <= 5 && ok; ++m) {
        int64_t order = (int64_t(1) << (2 * m)) - 1;
        for (int uc = 0; uc < 2 && ok; ++uc)
            for (int64_t a = 0; a < order && ok; ++a)
                for (int64_t b = 0; b < order; ++b) {
                    ++oracle_count;
                    if (!expsums::string_inequality_oracle(m, uc, a, b)) {
                        ok = false;
                        break;
                    }
                }
    }
    auto g = certigraph::build_graph();
    bool walks = true;
    for (int m = 1; m <= 4 && walks; ++m) walks = certigraph::walk_correspondence_check(m, g);
    ok = ok && walks;
    detail::finish(r, t, ok,
                   std::to_string(oracle_count) + " oracle instances, walk correspondence m <= 4");
    return r;
}

// 3. The worked example over GF(2^12), end to end.
inline CheckResult check_example(const registry::FieldRegistry& reg, int threads) {
    CheckResult r;
    r.id = "C3";
    r.name = "worked-example";
    r.limit_seconds = 120.0;
    r.modules = {"mesnager", "field", "boolfun", "expsums"};
    detail::Timer t;
    auto rep = mesnager::reproduce_example(reg, threads);
    std::string d;
    for (const auto& a : rep.assertions)
        d += a.name + (a.pass ? " ok; " : " FAILED (" + a.detail + "); ");
    detail::finish(r, t, rep.all_pass(), d);
    return r;
}

// 4. Characterization: bent set equals the K = 4 set exhaustively at m = 2
//    and m = 4, and b does not affect bentness at m = 2.
inline CheckResult check_characterization(const registry::FieldRegistry& reg, int threads) {
    CheckResult r;
    r.id = "C4";
    r.name = "characterization";
    r.limit_seconds = 30.0;
    r.modules = {"mesnager", "expsums", "boolfun", "field"};
    detail::Timer t;
    bool ok = true;
    std::string d;
    for (int m : {2, 4}) {
        auto fam = mesnager::make_family(reg, m);
        std::set<uint32_t> bent_set, k4_set;
        for (uint32_t a = 1; a < fam.Fn->size(); ++a) {
            if (boolfun::is_bent(mesnager::build_f(fam, {m, a, 1}))) bent_set.insert(a);
            if (mesnager::kloosterman_norm(fam, a) == 4) k4_set.insert(a);
        }
        ok = ok && bent_set == k4_set && !bent_set.empty();
        d += "m=" + std::to_string(m) + ": " + std::to_string(bent_set.size()) +
             " bent == " + std::to_string(k4_set.size()) + " with K=4; ";
    }
    {
        auto fam = mesnager::make_family(reg, 2);
        for (uint32_t a = 1; a < fam.Fn->size() && ok; ++a) {
            bool b1 = boolfun::is_bent(mesnager::build_f(fam, {2, a, 1}));
            for (uint32_t b4 = 2; b4 <= 3; ++b4)
                ok = ok && boolfun::is_bent(mesnager::build_f(fam, {2, a, b4})) == b1;
        }
        d += "b-invariance at m=2";
    }
    (void)threads;
    detail::finish(r, t, ok, d);
    return r;
}

// 5. Stickelberger congruence for every k at n in {4, 6, 8}, M = n + 4, and
//    G(0) = -1.
inline CheckResult check_stickelberger(const registry::FieldRegistry& reg, int) {
    CheckResult r;
    r.id = "C5";
    r.name = "stickelberger";
    r.limit_seconds = 30.0;
    r.modules = {"padic", "expsums"};
    detail::Timer t;
    bool ok = true;
    uint64_t count = 0;
    for (int n : {4, 6, 8}) {
        padic::PadicCtx P(reg.get(n), n + 4);
        ok = ok && (P.gauss_sum(0) == P.scalar(-1));
        for (int64_t k = 0; k + 1 < int64_t(P.q()) && ok; ++k) {
            ok = P.stickelberger_check(k);
            ++count;
        }
    }
    detail::finish(r, t, ok, std::to_string(count) + " Gauss sums checked, G(0) = -1");
    return r;
}

// 6. The Gauss-sum identity suite in Z_q/2^M: interpolation, the Dillon
//    identity, Davenport-Hasse, and the Kloosterman-Gauss lemma.
inline CheckResult check_gauss_identities(const registry::FieldRegistry& reg, int) {
    CheckResult r;
    r.id = "C6";
    r.name = "gauss-identities";
    r.limit_seconds = 60.0;
    r.modules = {"padic", "expsums", "field"};
    detail::Timer t;
    bool ok = true;
    std::string d;

    for (int n : {4, 6}) {
        padic::PadicCtx P(reg.get(n), 12);
        ok = ok && P.interpolation_check();
    }
    d += "interpolation q=16,64; ";

    {
        padic::PadicCtx P(reg.get(4), 16);
        for (uint32_t a = 1; a < 16 && ok; ++a)
            for (uint32_t c = 1; c < 16 && ok; ++c) ok = P.dillon_gauss_identity_check(a, c);
        d += "dillon identity m=2 exhaustive; ";
    }
    {
        padic::PadicCtx P(reg.get(6), 16);
        std::mt19937 rng(0x4242);
        for (int i = 0; i < 20 && ok; ++i) {
            uint32_t a = 1 + rng() % 63, c = 1 + rng() % 63;
            ok = P.dillon_gauss_identity_check(a, c);
        }
        d += "dillon identity m=3 sampled (20); ";
    }
    for (int m : {2, 3}) {
        padic::PadicCtx P(reg.get(2 * m), 16);
        for (int64_t i = 0; i + 1 < (int64_t(1) << m) && ok; ++i)
            ok = P.davenport_hasse_check(i);
        for (uint32_t a_hat : P.subfield_units()) {
            if (!ok) break;
            ok = P.kloosterman_gauss_identity_check(a_hat);
        }
    }
    d += "davenport-hasse and kloosterman-gauss lemma m=2,3";
    detail::finish(r, t, ok, d);
    return r;
}

// 7. Congruence suite: Dillon sum vs Kloosterman mod 2^(m+1) on random
//    pairs, and the Walsh congruence exhaustively at m = 2 plus samples at
//    m = 4.
inline CheckResult check_congruences(const registry::FieldRegistry& reg, int) {
    CheckResult r;
    r.id = "C7";
    r.name = "congruences";
    r.limit_seconds = 60.0;
    r.modules = {"expsums", "boolfun", "field"};
    detail::Timer t;
    bool ok = true;
    std::mt19937 rng(0x1337);
    for (int m : {2, 3, 4, 5}) {
        auto Fn = reg.get(2 * m);
        int64_t mod = int64_t(1) << (m + 1);
        for (int i = 0; i < 100 && ok; ++i) {
            uint32_t a = 1 + rng() % Fn->order();
            uint32_t c = 1 + rng() % Fn->order();
            int64_t B = expsums::dillon_sum(*Fn, a, c);
            int64_t K = expsums::kloosterman_in_subfield(
                *Fn, Fn->pow(a, (int64_t(1) << m) + 1));
            ok = util::mod_pos(B, mod) == util::mod_pos(K + (int64_t(1) << m) - 1, mod);
        }
    }
    std::string d = "dillon congruence 100 pairs each m=2..5; ";
    {
        auto Fn = reg.get(4);
        for (uint32_t a = 1; a < 16 && ok; ++a)
            for (uint32_t c = 1; c < 16 && ok; ++c) ok = expsums::walsh_congruence_check(Fn, a, c);
        d += "walsh congruence m=2 exhaustive; ";
    }
    {
        auto Fn = reg.get(8);
        for (int i = 0; i < 50 && ok; ++i) {
            uint32_t a = 1 + rng() % Fn->order();
            uint32_t c = 1 + rng() % Fn->order();
            ok = expsums::walsh_congruence_check(Fn, a, c);
        }
        d += "walsh congruence m=4 sampled (50)";
    }
    detail::finish(r, t, ok, d);
    return r;
}

// Randomized add-and-carry batch: each instance checks digit soundness,
// carry bounds, the sum identity and a single-carry uniqueness probe.
// Returns (pass, fail) instance counts.
inline std::pair<int, int> carry_batch(int instances, int max_n, uint32_t seed) {
    if (max_n < 2 || max_n > 62) throw std::invalid_argument("max-n out of range");
    std::mt19937 rng(seed);
    int pass = 0, fail = 0;
    for (int it = 0; it < instances; ++it) {
        int n = 2 + int(rng() % uint32_t(max_n - 1));  // 2..max_n
        int nseq = 1 + int(rng() % 3);
        std::vector<int> coeffs(nseq);
        std::vector<carry::PeriodicBitSeq> seqs;
        for (int i = 0; i < nseq; ++i) {
            int c = 0;
            while (c == 0) c = int(rng() % 7) - 3;
            coeffs[i] = c;
            std::vector<uint8_t> bits(n);
            for (int j = 0; j < n; ++j) bits[j] = rng() & 1;
            seqs.emplace_back(n, std::move(bits));
        }
        bool all_const = true;
        for (const auto& s : seqs) all_const = all_const && s.is_constant();
        if (all_const) seqs[0].bits[0] ^= 1;

        bool ok = true;
        auto sol = carry::solve_carries(n, coeffs, seqs);
        int64_t order = (int64_t(1) << n) - 1;

        int64_t total = 0;
        for (int i = 0; i < nseq; ++i) total += int64_t(coeffs[i]) * seqs[i].value();
        ok = ok && util::mod_pos(sol.digits.value() - total, order) == 0;  // digit soundness

        int64_t carry_sum = 0, rhs_sum = 0;
        for (int j = 0; j < n; ++j) carry_sum += sol.carries[j];
        for (int i = 0; i < nseq; ++i) rhs_sum += int64_t(coeffs[i]) * seqs[i].weight();
        ok = ok && carry_sum == rhs_sum - sol.digits.weight();  // sum identity

        for (int j = 0; j < n; ++j)
            ok = ok && sol.carries[j] >= sol.carry_min && sol.carries[j] <= sol.carry_max;

        // Uniqueness probe: nudge one carry and re-propagate exactly; no
        // second bounded solution may appear.
        {
            std::vector<int> rhs(n, 0);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < nseq; ++i) rhs[j] += coeffs[i] * int(seqs[i].bits[j]);
            int j0 = int(rng() % n);
            int delta = (rng() & 1) ? 1 : -1;
            std::vector<int> alt = sol.carries;
            alt[j0] += delta;
            bool valid = true;
            for (int k = 1; k <= n && valid; ++k) {
                int j = (j0 + k) % n;
                int prev = alt[util::mod_pos(j - 1, n)];
                int num = rhs[j] - int(sol.digits.bits[j]) + prev;
                if ((num & 1) != 0) {
                    valid = false;
                    break;
                }
                alt[j] = num >> 1;
            }
            valid = valid && alt[j0] == sol.carries[j0] + delta;
            for (int j = 0; valid && j < n; ++j)
                valid = alt[j] >= sol.carry_min && alt[j] <= sol.carry_max;
            ok = ok && !valid;
        }
        (ok ? pass : fail) += 1;
    }
    return {pass, fail};
}

// 8. Carry theorem property suite on 10^4 random instances.
inline CheckResult check_carry_suite(const registry::FieldRegistry&, int) {
    CheckResult r;
    r.id = "C8";
    r.name = "carry-theorem";
    r.limit_seconds = 10.0;
    r.modules = {"carry"};
    detail::Timer t;
    auto [pass, fail] = carry_batch(10000, 16, 0xc0ffee);
    detail::finish(r, t, fail == 0,
                   std::to_string(pass) + "/" + std::to_string(pass + fail) +
                       " random instances, n <= 16");
    return r;
}

// 9. Spectral property suite: Parseval, fast-vs-slow Walsh agreement, and
//    the bent <=> bent-mod equivalence on random functions.
inline CheckResult check_spectral(const registry::FieldRegistry& reg, int) {
    CheckResult r;
    r.id = "C9";
    r.name = "spectral-suite";
    r.limit_seconds = 30.0;
    r.modules = {"boolfun", "field"};
    detail::Timer t;
    std::mt19937 rng(0x5eed);
    bool ok = true;
    for (int n : {2, 4, 6, 8}) {
        auto F = reg.get(n);
        for (int i = 0; i < 100 && ok; ++i) {
            std::vector<uint8_t> tab(F->size());
            for (auto& v : tab) v = rng() & 1;
            boolfun::BooleanFunction f(F, std::move(tab));
            auto s = boolfun::walsh_transform(f);
            ok = ok && s.parseval_ok();
            uint32_t b = rng() % F->size();
            ok = ok && boolfun::walsh_at(f, b) == s.values[b];
        }
    }
    std::string d = "parseval + fast/slow agreement, 100 pairs per n in {2,4,6,8}; ";
    {
        auto F = reg.get(4);
        for (int i = 0; i < 10000 && ok; ++i) {
            std::vector<uint8_t> tab(F->size());
            for (auto& v : tab) v = rng() & 1;
            auto s = boolfun::walsh_transform(boolfun::BooleanFunction(F, std::move(tab)));
            ok = ok && s.parseval_ok() && boolfun::is_bent(s) == boolfun::is_bent_mod(s);
        }
        d += "bent <=> bent-mod on 10^4 random n=4 functions";
    }
    detail::finish(r, t, ok, d);
    return r;
}

inline std::vector<CheckResult> run_all_checks(const registry::FieldRegistry& reg,
                                               int threads = 1) {
    return {
        check_digraph(reg, threads),        check_weight_inequality(reg, threads),
        check_example(reg, threads),        check_characterization(reg, threads),
        check_stickelberger(reg, threads),  check_gauss_identities(reg, threads),
        check_congruences(reg, threads),    check_carry_suite(reg, threads),
        check_spectral(reg, threads),
    };
}

}  // namespace bentforge::verify

#endif
