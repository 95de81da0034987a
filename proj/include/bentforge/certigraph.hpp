// The 72-vertex weighted transition digraph behind the binary-weight
// inequality: construction, strongly connected components, arc-weight
// statistics, and a potential certificate that no closed walk has negative
// weight (with minimum cycle mean as an independent second algorithm).
#ifndef BENTFORGE_CERTIGRAPH_HPP
#define BENTFORGE_CERTIGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "bentforge/carry.hpp"
#include "bentforge/util.hpp"

namespace bentforge::certigraph {

struct Vertex {
    int u = 0, a = 0, b = 0;  // bits
    int c = 0, d = 0;         // carries in {-1, 0, 1}
};

constexpr int kVertexCount = 72;

// Lexicographic index on (u, a, b, c+1, d+1).
inline int vertex_index(int u, int a, int b, int c, int d) {
    return ((((u * 2 + a) * 2 + b) * 3 + (c + 1)) * 3) + (d + 1);
}

struct Arc {
    int tail = 0, head = 0;
    int weight = 0;
};

struct Graph {
    std::vector<Vertex> vertices;
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out;  // arc indices per tail
};

// From each vertex (u', a', b', c', d') the successor carries are forced:
// c'' = floor((u' - a' + b' + c') / 2) makes s' = u' - a' + b' + c' - 2c''
// a bit, and symmetrically for d''. The successor digits a'', b'' are free,
// so every vertex has out-degree exactly 4.
inline Graph build_graph() {
    Graph g;
    g.vertices.resize(kVertexCount);
    for (int u = 0; u < 2; ++u)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = -1; c <= 1; ++c)
                    for (int d = -1; d <= 1; ++d)
                        g.vertices[vertex_index(u, a, b, c, d)] = Vertex{u, a, b, c, d};
    g.out.resize(kVertexCount);
    for (int t = 0; t < kVertexCount; ++t) {
        const Vertex& v = g.vertices[t];
        int xc = v.u - v.a + v.b + v.c;
        int xd = v.u + v.a - v.b + v.d;
        int cpp = xc >> 1, dpp = xd >> 1;
        int w = v.a + v.b - cpp - dpp;
        for (int a2 = 0; a2 < 2; ++a2)
            for (int b2 = 0; b2 < 2; ++b2) {
                int h = vertex_index(1 - v.u, a2, b2, cpp, dpp);
                g.out[t].push_back(int(g.arcs.size()));
                g.arcs.push_back(Arc{t, h, w});
            }
    }
    return g;
}

// Tarjan SCC; component ids are renumbered in ascending order of their
// smallest vertex so the labeling is canonical.
inline std::vector<int> scc_labels(const Graph& g) {
    int n = int(g.vertices.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<bool> on(n, false);
    int next = 0, ncomp = 0;

    struct Frame {
        int v;
        size_t child;
    };
    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        std::vector<Frame> call{{start, 0}};
        index[start] = low[start] = next++;
        stack.push_back(start);
        on[start] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < g.out[f.v].size()) {
                int w = g.arcs[g.out[f.v][f.child++]].head;
                if (index[w] == -1) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on[w] = true;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on[w] = false;
                        comp[w] = ncomp;
                        if (w == f.v) break;
                    }
                    ++ncomp;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    std::vector<int> first(ncomp, n);
    for (int v = 0; v < n; ++v) first[comp[v]] = std::min(first[comp[v]], v);
    std::vector<int> rank(ncomp);
    std::vector<int> by_first(ncomp);
    for (int i = 0; i < ncomp; ++i) by_first[i] = i;
    std::sort(by_first.begin(), by_first.end(),
              [&](int x, int y) { return first[x] < first[y]; });
    for (int r = 0; r < ncomp; ++r) rank[by_first[r]] = r;
    for (int v = 0; v < n; ++v) comp[v] = rank[comp[v]];
    return comp;
}

inline std::vector<std::vector<int>> components_from_labels(const std::vector<int>& comp) {
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<int>> cs(ncomp);
    for (int v = 0; v < int(comp.size()); ++v) cs[comp[v]].push_back(v);
    return cs;
}

// A vertex-induced subgraph; vertex ids refer to the parent graph.
struct Subgraph {
    std::vector<int> vertex_ids;  // ascending
    std::vector<Arc> arcs;        // both endpoints inside
};

inline Subgraph induced_subgraph(const Graph& g, const std::vector<int>& vertex_ids) {
    Subgraph s;
    s.vertex_ids = vertex_ids;
    std::sort(s.vertex_ids.begin(), s.vertex_ids.end());
    std::vector<bool> in(g.vertices.size(), false);
    for (int v : s.vertex_ids) in[v] = true;
    for (const Arc& a : g.arcs)
        if (in[a.tail] && in[a.head]) s.arcs.push_back(a);
    return s;
}

inline std::map<int, int> weight_histogram(const Subgraph& h) {
    std::map<int, int> hist;
    for (const Arc& a : h.arcs) ++hist[a.weight];
    return hist;
}

struct Certificate {
    std::map<int, int64_t> potential;  // vertex id -> label
};

struct CertifyOutcome {
    bool ok = false;
    Certificate certificate;        // valid when ok
    std::vector<int> cycle;         // vertex ids of a negative cycle when !ok
    int64_t cycle_weight = 0;
};

namespace detail {

// Exact-length DP from one source with per-layer parents: returns a negative
// closed walk through `src` if one of length <= n exists.
inline std::optional<std::pair<std::vector<int>, int64_t>> negative_cycle_from(
    const Subgraph& h, const std::map<int, int>& pos, int src) {
    int n = int(h.vertex_ids.size());
    const int64_t inf = INT64_MAX / 4;
    std::vector<std::vector<int64_t>> d(n + 1, std::vector<int64_t>(n, inf));
    std::vector<std::vector<int>> par(n + 1, std::vector<int>(n, -1));
    d[0][src] = 0;
    for (int k = 1; k <= n; ++k) {
        for (const Arc& a : h.arcs) {
            int t = pos.at(a.tail), hd = pos.at(a.head);
            if (d[k - 1][t] < inf && d[k - 1][t] + a.weight < d[k][hd]) {
                d[k][hd] = d[k - 1][t] + a.weight;
                par[k][hd] = t;
            }
        }
        if (d[k][src] < 0) {
            std::vector<int> walk(k + 1);
            walk[k] = src;
            for (int j = k; j > 0; --j) walk[j - 1] = par[j][walk[j]];
            return std::make_pair(walk, d[k][src]);  // closed walk, weight < 0
        }
    }
    return std::nullopt;
}

// Splits a negative closed walk (as positions into h.vertex_ids, without the
// trailing repeat of the start) at repeated vertices until a simple negative
// cycle remains; at least one side of every split stays negative.
inline std::pair<std::vector<int>, int64_t> reduce_to_simple_cycle(
    const Subgraph& h, const std::map<int, int>& pos, std::vector<int> walk) {
    auto arc_weight = [&](int t, int hd) {
        int64_t best = INT64_MAX;
        for (const Arc& a : h.arcs)
            if (pos.at(a.tail) == t && pos.at(a.head) == hd) best = std::min(best, int64_t(a.weight));
        return best;
    };
    auto walk_weight = [&](const std::vector<int>& w) {
        int64_t s = 0;
        for (size_t i = 0; i < w.size(); ++i) s += arc_weight(w[i], w[(i + 1) % w.size()]);
        return s;
    };
    while (true) {
        std::vector<int> first_seen(h.vertex_ids.size(), -1);
        int rep_at = -1, rep_prev = -1;
        for (int i = 0; i < int(walk.size()); ++i) {
            if (first_seen[walk[i]] != -1) {
                rep_prev = first_seen[walk[i]];
                rep_at = i;
                break;
            }
            first_seen[walk[i]] = i;
        }
        if (rep_at == -1) return {walk, walk_weight(walk)};
        std::vector<int> inner(walk.begin() + rep_prev, walk.begin() + rep_at);
        std::vector<int> outer(walk.begin(), walk.begin() + rep_prev);
        outer.insert(outer.end(), walk.begin() + rep_at, walk.end());
        walk = walk_weight(inner) < 0 ? std::move(inner) : std::move(outer);
    }
}

}  // namespace detail

// Bellman-Ford from a virtual super-source (all labels start at 0). If no
// negative cycle exists the final labels are a feasible potential; otherwise
// an explicit negative cycle is extracted by exact-length DP.
inline CertifyOutcome certify_nonnegative(const Subgraph& h) {
    CertifyOutcome out;
    std::map<int, int> pos;
    for (int i = 0; i < int(h.vertex_ids.size()); ++i) pos[h.vertex_ids[i]] = i;
    int n = int(h.vertex_ids.size());
    std::vector<int64_t> dist(n, 0);
    bool changed = true;
    for (int round = 0; round <= n && changed; ++round) {
        changed = false;
        for (const Arc& a : h.arcs) {
            int t = pos.at(a.tail), hd = pos.at(a.head);
            if (dist[t] + a.weight < dist[hd]) {
                dist[hd] = dist[t] + a.weight;
                changed = true;
            }
        }
    }
    if (!changed) {
        out.ok = true;
        for (int i = 0; i < n; ++i) out.certificate.potential[h.vertex_ids[i]] = dist[i];
        return out;
    }
    for (int src = 0; src < n; ++src) {
        auto found = detail::negative_cycle_from(h, pos, src);
        if (found) {
            std::vector<int> walk(found->first.begin(), found->first.end() - 1);
            auto [cyc, w] = detail::reduce_to_simple_cycle(h, pos, std::move(walk));
            out.cycle.reserve(cyc.size());
            for (int v : cyc) out.cycle.push_back(h.vertex_ids[v]);
            out.cycle_weight = w;
            return out;
        }
    }
    throw std::logic_error("relaxation detected a negative cycle but extraction found none");
}

// Linear scan: every arc must have nonnegative reduced weight
// w + pi(tail) - pi(head). Sound regardless of how the certificate was made.
inline bool verify_certificate(const Subgraph& h, const Certificate& cert) {
    for (int v : h.vertex_ids)
        if (!cert.potential.count(v))
            throw std::invalid_argument("certificate missing a potential for vertex " +
                                        std::to_string(v));
    for (const Arc& a : h.arcs)
        if (a.weight + cert.potential.at(a.tail) - cert.potential.at(a.head) < 0) return false;
    return true;
}

// Karp's minimum cycle mean as an exact fraction (num, den); nullopt when
// the subgraph has no cycle.
inline std::optional<std::pair<int64_t, int64_t>> min_cycle_mean(const Subgraph& h) {
    int n = int(h.vertex_ids.size());
    if (n == 0) return std::nullopt;
    std::map<int, int> pos;
    for (int i = 0; i < n; ++i) pos[h.vertex_ids[i]] = i;
    const int64_t inf = INT64_MAX / 4;
    std::vector<std::vector<int64_t>> d(n + 1, std::vector<int64_t>(n, inf));
    for (int v = 0; v < n; ++v) d[0][v] = 0;
    for (int k = 1; k <= n; ++k)
        for (const Arc& a : h.arcs) {
            int t = pos.at(a.tail), hd = pos.at(a.head);
            if (d[k - 1][t] < inf) d[k][hd] = std::min(d[k][hd], d[k - 1][t] + a.weight);
        }
    bool found = false;
    int64_t bn = 0, bd = 1;  // best mean bn/bd
    for (int v = 0; v < n; ++v) {
        if (d[n][v] >= inf) continue;
        bool any = false;
        int64_t mn = 0, md = 1;  // max over k of (d_n - d_k)/(n - k)
        for (int k = 0; k < n; ++k) {
            if (d[k][v] >= inf) continue;
            int64_t num = d[n][v] - d[k][v], den = n - k;
            if (!any || num * md > mn * den) {
                mn = num;
                md = den;
                any = true;
            }
        }
        if (!any) continue;
        if (!found || mn * bd < bn * md) {
            bn = mn;
            bd = md;
            found = true;
        }
    }
    if (!found) return std::nullopt;
    int64_t g = int64_t(util::gcd_u64(uint64_t(bn < 0 ? -bn : bn), uint64_t(bd)));
    if (g > 1) {
        bn /= g;
        bd /= g;
    }
    return std::make_pair(bn, bd);
}

// Every instance of the paired carry systems traces a closed walk of length
// n = 2m whose arc weights sum to sum_j (a_j + b_j - c_j - d_j); checks the
// correspondence and the weight agreement exhaustively for the given m.
inline bool walk_correspondence_check(int m, const Graph& g) {
    if (m < 1 || m > 4) throw std::invalid_argument("exhaustive walk check supports m in [1, 4]");
    int n = 2 * m;
    int64_t order = (int64_t(1) << n) - 1;
    for (int u_choice = 0; u_choice < 2; ++u_choice)
        for (int64_t a = 0; a < order; ++a)
            for (int64_t b = 0; b < order; ++b) {
                carry::StringSystems sys = carry::solve_string_systems(m, u_choice, a, b);
                int64_t walk_weight = 0;
                for (int j = 0; j < n; ++j) {
                    int jn = (j + 1) % n;
                    int tail = vertex_index(sys.u.bits[j], sys.a.bits[j], sys.b.bits[j],
                                            sys.s_side.carries[util::mod_pos(j - 1, n)],
                                            sys.t_side.carries[util::mod_pos(j - 1, n)]);
                    int head = vertex_index(sys.u.bits[jn], sys.a.bits[jn], sys.b.bits[jn],
                                            sys.s_side.carries[j], sys.t_side.carries[j]);
                    int expected_w = int(sys.a.bits[j]) + sys.b.bits[j] -
                                     sys.s_side.carries[j] - sys.t_side.carries[j];
                    bool found_arc = false;
                    for (int ai : g.out[tail]) {
                        const Arc& arc = g.arcs[ai];
                        if (arc.head == head && arc.weight == expected_w) {
                            found_arc = true;
                            break;
                        }
                    }
                    if (!found_arc) return false;
                    walk_weight += expected_w;
                }
                if (walk_weight != sys.weight_sum) return false;
            }
    return true;
}

inline nlohmann::json graph_to_json(const Graph& g, const std::vector<int>& labels,
                                    const Certificate* cert = nullptr) {
    nlohmann::json jv = nlohmann::json::array();
    for (int i = 0; i < int(g.vertices.size()); ++i) {
        const Vertex& v = g.vertices[i];
        jv.push_back({{"id", i}, {"u", v.u}, {"a", v.a}, {"b", v.b}, {"c", v.c}, {"d", v.d}});
    }
    nlohmann::json ja = nlohmann::json::array();
    for (const Arc& a : g.arcs)
        ja.push_back({{"tail", a.tail}, {"head", a.head}, {"weight", a.weight}});
    nlohmann::json j{{"vertices", jv}, {"arcs", ja}, {"scc", labels}};
    if (cert) {
        nlohmann::json jp = nlohmann::json::object();
        for (const auto& [v, p] : cert->potential) jp[std::to_string(v)] = p;
        j["potentials"] = jp;
    }
    return j;
}

}  // namespace bentforge::certigraph

#endif
