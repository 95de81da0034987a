// Command-line front end: subcommand dispatch, registry loading, JSON/CSV
// emission and the one-shot verify-paper pipeline. Exit codes: 0 success,
// 1 check failure, 2 usage error.
#ifndef BENTFORGE_CLI_HPP
#define BENTFORGE_CLI_HPP

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bentforge/verify.hpp"

namespace bentforge::cli {

namespace detail {

inline void write_output(const std::string& path, const std::string& content) {
    std::string body = content;
    if (body.empty() || body.back() != '\n') body.push_back('\n');
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write to " + path);
    out << body;
}

inline nlohmann::json manifest(const registry::FieldRegistry& reg, const std::string& subcommand,
                               const nlohmann::json& params) {
    return {{"tool", "bentforge"},
            {"version", kToolVersion},
            {"registry_hash", reg.content_hash()},
            {"subcommand", subcommand},
            {"parameters", params}};
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
    CLI::App app{"bentforge: exact verification of the Kloosterman-sum bentness "
                 "characterization for binomial Boolean functions"};
    app.require_subcommand(1);

    std::string registry_path;
    bool json_out = false;
    int threads = 1;
    app.add_option("--field-registry", registry_path,
                   "JSON file mapping degree to hex modulus, merged over the defaults")
        ->envname("BENTFORGE_REGISTRY");
    app.add_flag("--json", json_out, "emit machine-readable JSON instead of text");
    app.add_option("--threads", threads, "worker threads for scan-style subcommands")
        ->default_val(1);

    registry::FieldRegistry reg;
    bool reg_loaded = false;
    auto get_reg = [&]() -> registry::FieldRegistry& {
        if (!reg_loaded) {
            if (!registry_path.empty()) reg.load_file(registry_path);
            reg_loaded = true;
        }
        return reg;
    };

    int exit_code = 0;

    // ---- field ----
    auto* sc_field = app.add_subcommand("field", "describe a field from the registry");
    sc_field->fallthrough();
    int field_degree = 0;
    sc_field->add_option("--degree", field_degree, "extension degree")->required();
    sc_field->callback([&]() {
        auto F = get_reg().get(field_degree);
        nlohmann::json j{{"degree", F->degree()},
                         {"modulus", util::to_hex(F->modulus())},
                         {"generator", util::to_hex(F->generator())},
                         {"trace_mask", util::to_hex(F->trace_mask())}};
        if (json_out) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "gf(2^" << F->degree() << ")  modulus 0x" << util::to_hex(F->modulus())
                      << "  generator 0x" << util::to_hex(F->generator()) << "  trace mask 0x"
                      << util::to_hex(F->trace_mask()) << "\n";
        }
    });

    // ---- walsh ----
    auto* sc_walsh = app.add_subcommand("walsh", "Walsh spectrum of a truth table");
    sc_walsh->fallthrough();
    int walsh_n = 0;
    std::string walsh_hex, walsh_out;
    sc_walsh->add_option("--n", walsh_n, "field degree")->required();
    sc_walsh->add_option("--table-hex", walsh_hex, "truth table, little-endian hex")->required();
    sc_walsh->add_option("--out", walsh_out, "write spectrum JSON to a file");
    sc_walsh->callback([&]() {
        auto f = boolfun::table_from_hex(get_reg().get(walsh_n), walsh_hex);
        auto s = boolfun::walsh_transform(f);
        if (json_out || !walsh_out.empty()) {
            detail::write_output(walsh_out, boolfun::spectrum_to_json(s).dump(2));
        } else {
            std::cout << "n = " << s.n << ", parseval " << (s.parseval_ok() ? "ok" : "VIOLATED")
                      << "\nhistogram:";
            for (const auto& [v, c] : s.histogram()) std::cout << " " << v << "x" << c;
            std::cout << "\n";
        }
        if (!s.parseval_ok()) exit_code = 1;
    });

    // ---- bent ----
    auto* sc_bent = app.add_subcommand("bent", "bentness verdicts for a truth table");
    sc_bent->fallthrough();
    int bent_n = 0;
    std::string bent_hex;
    sc_bent->add_option("--n", bent_n, "field degree (even)")->required();
    sc_bent->add_option("--table-hex", bent_hex, "truth table, little-endian hex")->required();
    sc_bent->callback([&]() {
        auto f = boolfun::table_from_hex(get_reg().get(bent_n), bent_hex);
        auto s = boolfun::walsh_transform(f);
        bool b = boolfun::is_bent(s), bm = boolfun::is_bent_mod(s);
        nlohmann::json j{{"bent", b}, {"bent_mod", bm}};
        if (b) j["dual_table_hex"] = boolfun::table_to_hex(boolfun::dual(f));
        if (json_out) std::cout << j.dump(2) << "\n";
        else {
            std::cout << "bent: " << (b ? "yes" : "no") << "  (congruence test: "
                      << (bm ? "yes" : "no") << ")\n";
            if (b) std::cout << "dual: " << j["dual_table_hex"].get<std::string>() << "\n";
        }
        if (b != bm) exit_code = 1;  // would contradict the equivalence
    });

    // ---- kloosterman ----
    auto* sc_klo = app.add_subcommand("kloosterman", "Kloosterman sums over gf(2^m)");
    sc_klo->fallthrough();
    int klo_m = 0;
    std::string klo_a, klo_out, klo_format = "text";
    bool klo_all = false;
    sc_klo->add_option("--m", klo_m, "subfield degree m")->required();
    sc_klo->add_option("--a-hex", klo_a, "single argument a (hex)");
    sc_klo->add_flag("--all", klo_all, "tabulate all nonzero arguments");
    sc_klo->add_option("--out", klo_out, "write rows to a file");
    sc_klo->add_option("--format", klo_format, "text, csv or json")->default_val("text");
    sc_klo->callback([&]() {
        auto& r = get_reg();
        if (!klo_all) {
            if (klo_a.empty()) throw CLI::ValidationError("kloosterman", "need --a-hex or --all");
            uint32_t a = uint32_t(util::parse_hex(klo_a));
            std::cout << expsums::kloosterman(*r.get(klo_m), a) << "\n";
            return;
        }
        if (klo_m % 2 == 0 && klo_m >= 2) {
            auto fam = mesnager::make_family(r, klo_m);
            auto rows = mesnager::characterize(fam, threads);
            if (json_out || klo_format == "json") {
                detail::write_output(klo_out, mesnager::rows_to_json(rows).dump(2));
            } else {
                std::string s = "a_hex,kloosterman,bent\n";
                for (const auto& row : rows)
                    s += util::to_hex(row.a) + "," + std::to_string(row.kloosterman) + "," +
                         (row.bent ? "true" : "false") + "\n";
                detail::write_output(klo_out, s);
            }
        } else {
            auto F = r.get(klo_m);
            std::string s = "a_hex,kloosterman\n";
            nlohmann::json j = nlohmann::json::array();
            for (uint32_t a = 1; a < F->size(); ++a) {
                int64_t k = expsums::kloosterman(*F, a);
                s += util::to_hex(a) + "," + std::to_string(k) + "\n";
                j.push_back({{"a", util::to_hex(a)}, {"kloosterman", k}});
            }
            detail::write_output(klo_out, (json_out || klo_format == "json") ? j.dump(2) : s);
        }
    });

    // ---- padic-check ----
    auto* sc_padic = app.add_subcommand("padic-check", "Gauss-sum identities in Z_q/2^M");
    sc_padic->fallthrough();
    int padic_n = 4, padic_prec = 0;
    sc_padic->add_option("--n", padic_n, "field degree n (q = 2^n)")->default_val(4);
    sc_padic->add_option("--precision", padic_prec, "truncation precision M (default n + 4)");
    sc_padic->callback([&]() {
        int M = padic_prec > 0 ? padic_prec : padic_n + 4;
        padic::PadicCtx P(get_reg().get(padic_n), M);
        auto line = [&](const std::string& name, bool ok) {
            std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
            if (!ok) exit_code = 1;
        };
        bool st = true;
        for (int64_t k = 0; k + 1 < int64_t(P.q()); ++k) st = st && P.stickelberger_check(k);
        line("stickelberger all k", st);
        line("gauss_sum(0) == -1", P.gauss_sum(0) == P.scalar(-1));
        line("interpolation", P.interpolation_check());
        if (padic_n % 2 == 0) {
            int m = padic_n / 2;
            bool dh = true;
            for (int64_t i = 0; i + 1 < (int64_t(1) << m); ++i) dh = dh && P.davenport_hasse_check(i);
            line("davenport-hasse all i", dh);
            bool kg = true;
            for (uint32_t a_hat : P.subfield_units()) kg = kg && P.kloosterman_gauss_identity_check(a_hat);
            line("kloosterman-gauss lemma", kg);
            bool dg = true;
            std::mt19937 rng(1);
            for (int i = 0; i < 20; ++i) {
                uint32_t a = 1 + rng() % P.field().order(), c = 1 + rng() % P.field().order();
                dg = dg && P.dillon_gauss_identity_check(a, c);
            }
            line("dillon gauss identity (20 samples)", dg);
        }
    });

    // ---- carry-check ----
    auto* sc_carry = app.add_subcommand("carry-check", "randomized add-and-carry verification");
    sc_carry->fallthrough();
    int carry_count = 10000, carry_max_n = 16;
    uint32_t carry_seed = 0xc0ffee;
    sc_carry->add_option("--count", carry_count)->default_val(10000);
    sc_carry->add_option("--max-n", carry_max_n)->default_val(16);
    sc_carry->add_option("--seed", carry_seed)->default_val(0xc0ffee);
    sc_carry->callback([&]() {
        auto [pass, fail] = verify::carry_batch(carry_count, carry_max_n, carry_seed);
        nlohmann::json j{{"instances", carry_count}, {"pass", pass}, {"fail", fail},
                         {"seed", carry_seed}};
        std::cout << j.dump() << "\n";
        if (fail != 0) exit_code = 1;
    });

    // ---- graph-certify ----
    auto* sc_graph = app.add_subcommand("graph-certify", "build and certify the 72-vertex digraph");
    sc_graph->fallthrough();
    std::string graph_out;
    sc_graph->add_option("--out", graph_out, "write graph + certificate JSON to a file");
    sc_graph->callback([&]() {
        auto g = certigraph::build_graph();
        auto labels = certigraph::scc_labels(g);
        auto comps = certigraph::components_from_labels(labels);
        size_t big = 0;
        for (const auto& c : comps) big = std::max(big, c.size());
        std::cout << "vertices: " << g.vertices.size() << "\narcs: " << g.arcs.size()
                  << "\nstrongly connected components: " << comps.size()
                  << "\nlargest component: " << big << " vertices\n";
        bool all_ok = g.vertices.size() == 72 && comps.size() == 33 && big == 40;
        const certigraph::Certificate* cert_ptr = nullptr;
        certigraph::Certificate cert;
        for (const auto& c : comps) {
            if (c.size() != big) continue;
            auto H = certigraph::induced_subgraph(g, c);
            std::cout << "weight histogram:";
            for (const auto& [w, cnt] : certigraph::weight_histogram(H))
                std::cout << " " << w << ":" << cnt;
            std::cout << "\n";
            auto res = certigraph::certify_nonnegative(H);
            if (res.ok && certigraph::verify_certificate(H, res.certificate)) {
                cert = res.certificate;
                cert_ptr = &cert;
                std::cout << "CERTIFIED: no negative-weight closed walk\n";
            } else {
                all_ok = false;
                std::cout << "NEGATIVE CYCLE of weight " << res.cycle_weight << "\n";
            }
        }
        if (!graph_out.empty() || json_out)
            detail::write_output(graph_out, certigraph::graph_to_json(g, labels, cert_ptr).dump(2));
        if (!all_ok) exit_code = 1;
    });

    // ---- mesnager ----
    auto* sc_mes = app.add_subcommand("mesnager", "the binomial family tools");
    sc_mes->fallthrough();
    sc_mes->require_subcommand(1);

    auto* mes_char = sc_mes->add_subcommand("characterize", "Kloosterman vs bent table");
    mes_char->fallthrough();
    int char_m = 2;
    uint32_t char_samples = 0;
    std::string char_out;
    mes_char->add_option("--m", char_m, "even m (exhaustive for 2m <= 16)")->required();
    mes_char->add_option("--samples", char_samples, "sample count when 2m > 16");
    mes_char->add_option("--out", char_out, "write rows JSON to a file");
    mes_char->callback([&]() {
        auto fam = mesnager::make_family(get_reg(), char_m);
        auto rows = mesnager::characterize(fam, threads, char_samples);
        size_t bad = 0, bent = 0;
        for (const auto& r : rows) {
            bad += !r.consistent;
            bent += r.bent;
        }
        if (json_out || !char_out.empty()) {
            nlohmann::json j{{"manifest", detail::manifest(get_reg(), "mesnager characterize",
                                                           {{"m", char_m}})},
                             {"rows", mesnager::rows_to_json(rows)}};
            detail::write_output(char_out, j.dump(2));
        }
        std::cout << rows.size() << " rows, " << bent << " bent, " << bad
                  << " inconsistent\n"
                  << (bad == 0 ? "PASS" : "FAIL")
                  << ": bent <=> Kloosterman sum equals 4\n";
        if (bad != 0) exit_code = 1;
    });

    auto* mes_ex = sc_mes->add_subcommand("example", "reproduce the worked degree-12 example");
    mes_ex->fallthrough();
    mes_ex->callback([&]() {
        auto rep = mesnager::reproduce_example(get_reg(), threads);
        if (json_out) {
            nlohmann::json ja = nlohmann::json::array();
            for (const auto& a : rep.assertions)
                ja.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
            std::cout << nlohmann::json{{"assertions", ja}, {"manifest", rep.manifest}}.dump(2)
                      << "\n";
        } else {
            for (const auto& a : rep.assertions)
                std::cout << (a.pass ? "[PASS] " : "[FAIL] ") << a.name << ": " << a.detail
                          << "\n";
        }
        if (!rep.all_pass()) exit_code = 1;
    });

    auto* mes_search = sc_mes->add_subcommand("search", "find bent members in encoding order");
    mes_search->fallthrough();
    int search_m = 2;
    uint32_t search_limit = 10;
    mes_search->add_option("--m", search_m, "even m")->required();
    mes_search->add_option("--limit", search_limit, "max hits")->default_val(10);
    mes_search->callback([&]() {
        auto fam = mesnager::make_family(get_reg(), search_m);
        auto hits = mesnager::search_bent(fam, search_limit, threads);
        if (json_out) {
            nlohmann::json j = nlohmann::json::array();
            for (uint32_t a : hits) j.push_back(util::to_hex(a));
            std::cout << j.dump() << "\n";
        } else {
            for (uint32_t a : hits) std::cout << "0x" << util::to_hex(a) << "\n";
        }
    });

    // ---- verify-paper ----
    auto* sc_verify = app.add_subcommand("verify-paper",
                                         "run the complete verification pipeline");
    sc_verify->fallthrough();
    sc_verify->callback([&]() {
        auto results = verify::run_all_checks(get_reg(), threads);
        std::set<std::string> touched{"cli"};
        bool all = true;
        double wall = 0.0;
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& r : results) {
            all = all && r.pass;
            wall += r.seconds;
            touched.insert(r.modules.begin(), r.modules.end());
            char buf[64];
            snprintf(buf, sizeof buf, "%.3fs", r.seconds);
            if (!json_out)
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " ("
                          << buf << "): " << r.detail << "\n";
            jr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass},
                          {"seconds", r.seconds}, {"detail", r.detail},
                          {"modules", r.modules}});
        }
        if (json_out) {
            auto man = detail::manifest(get_reg(), "verify-paper", {{"threads", threads}});
            man["wall_clock_seconds"] = wall;
            std::cout << nlohmann::json{{"manifest", man},
                                        {"checks", jr},
                                        {"all_pass", all}}.dump(2)
                      << "\n";
        } else {
            std::cout << "modules exercised:";
            for (const auto& m : touched) std::cout << " " << m;
            std::cout << "\n" << (all ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
        }
        if (!all) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace bentforge::cli

#endif
