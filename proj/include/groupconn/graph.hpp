#pragma once

// Loopless multigraph with a reference orientation: edge identity is the
// position in the edge list, so parallel edges stay distinguishable and
// flows can assign values per edge. All transformations are value-returning
// and document their output vertex/edge order.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "groupconn/util.hpp"

namespace groupconn {

struct Multigraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // (tail, head) = reference orientation
    std::string name;
    std::map<int, std::string> vertex_labels;

    int m() const { return static_cast<int>(edges.size()); }

    int degree(int v) const {
        int d = 0;
        for (const auto& [t, h] : edges) d += (t == v) + (h == v);
        return d;
    }

    std::vector<int> degrees() const {
        std::vector<int> d(n, 0);
        for (const auto& [t, h] : edges) {
            ++d[t];
            ++d[h];
        }
        return d;
    }

    bool is_cubic() const {
        auto d = degrees();
        return std::all_of(d.begin(), d.end(), [](int x) { return x == 3; });
    }

    // Incident edge indices in edge-list order.
    std::vector<int> incident_edges(int v) const {
        std::vector<int> out;
        for (int e = 0; e < m(); ++e)
            if (edges[e].first == v || edges[e].second == v) out.push_back(e);
        return out;
    }

    // Component id per vertex, ids numbered by smallest contained vertex rank.
    std::vector<int> components() const {
        std::vector<int> comp(n, -1);
        std::vector<std::vector<std::pair<int, int>>> adj(n);
        for (int e = 0; e < m(); ++e) {
            adj[edges[e].first].push_back({edges[e].second, e});
            adj[edges[e].second].push_back({edges[e].first, e});
        }
        int next = 0;
        for (int s = 0; s < n; ++s) {
            if (comp[s] != -1) continue;
            comp[s] = next;
            std::deque<int> q{s};
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                for (auto [w, e] : adj[u])
                    if (comp[w] == -1) {
                        comp[w] = next;
                        q.push_back(w);
                    }
            }
            ++next;
        }
        return comp;
    }

    bool connected() const {
        if (n <= 1) return true;
        auto c = components();
        return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
    }

    bool equal_structure(const Multigraph& o) const {
        return n == o.n && edges == o.edges;
    }
};

inline void check_vertex(const Multigraph& g, int v, const char* what) {
    if (v < 0 || v >= g.n)
        throw UsageError(std::string(what) + ": vertex " + std::to_string(v) +
                         " out of range (n=" + std::to_string(g.n) + ")");
}

inline void check_edge_index(const Multigraph& g, int e, const char* what) {
    if (e < 0 || e >= g.m())
        throw UsageError(std::string(what) + ": edge index " + std::to_string(e) +
                         " out of range (m=" + std::to_string(g.m()) + ")");
}

// ---------------------------------------------------------------------------
// file format: `# comment`, `name <string>`, `vertices <n>`,
// `label <v> <string>`, one `edge <tail> <head>` per edge (file order =
// edge order). Emission reproduces this byte-stably.

inline Multigraph parse_graph(const std::string& text) {
    Multigraph g;
    bool have_vertices = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto fail = [&](const std::string& why) -> UsageError {
            return UsageError("graph parse error at line " + std::to_string(lineno) +
                              ": " + why);
        };
        if (kw == "name") {
            std::string rest;
            std::getline(ls, rest);
            auto b = rest.find_first_not_of(" \t");
            g.name = b == std::string::npos ? "" : rest.substr(b);
        } else if (kw == "vertices") {
            if (have_vertices) throw fail("duplicate vertices directive");
            if (!(ls >> g.n) || g.n < 0) throw fail("bad vertex count");
            have_vertices = true;
        } else if (kw == "edge") {
            if (!have_vertices) throw fail("edge before vertices");
            int t, h;
            if (!(ls >> t >> h)) throw fail("bad edge line");
            if (t < 0 || t >= g.n || h < 0 || h >= g.n)
                throw fail("edge endpoint out of range");
            if (t == h) throw fail("loop edge " + std::to_string(t));
            g.edges.push_back({t, h});
        } else if (kw == "label") {
            if (!have_vertices) throw fail("label before vertices");
            int v;
            std::string rest;
            if (!(ls >> v)) throw fail("bad label line");
            if (v < 0 || v >= g.n) throw fail("label vertex out of range");
            std::getline(ls, rest);
            auto b = rest.find_first_not_of(" \t");
            g.vertex_labels[v] = b == std::string::npos ? "" : rest.substr(b);
        } else {
            throw fail("unknown directive '" + kw + "'");
        }
    }
    if (!have_vertices) throw UsageError("graph parse error: missing vertices directive");
    return g;
}

inline std::string emit_graph(const Multigraph& g) {
    std::string out;
    if (!g.name.empty()) out += "name " + g.name + "\n";
    out += "vertices " + std::to_string(g.n) + "\n";
    for (const auto& [v, s] : g.vertex_labels)
        out += "label " + std::to_string(v) + " " + s + "\n";
    for (const auto& [t, h] : g.edges)
        out += "edge " + std::to_string(t) + " " + std::to_string(h) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// transformations

struct ContractResult {
    Multigraph graph;
    std::vector<int> vertex_map;  // old vertex -> new vertex
    std::vector<int> edge_map;    // old edge -> new edge index, -1 if gone
};

// Identify the two ends of each edge in `edge_indices`, then delete every
// resulting loop. New vertex ids are ranks of class representatives (the
// smallest old vertex of each class); surviving edges keep their order.
inline ContractResult contract(const Multigraph& g, const std::vector<int>& edge_indices) {
    std::vector<int> parent(g.n);
    for (int v = 0; v < g.n; ++v) parent[v] = v;
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<bool> in_x(g.m(), false);
    for (int e : edge_indices) {
        check_edge_index(g, e, "contract");
        in_x[e] = true;
        int a = find(g.edges[e].first), b = find(g.edges[e].second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    // rank representatives
    std::vector<int> map(g.n, -1);
    int next = 0;
    for (int v = 0; v < g.n; ++v)
        if (find(v) == v) map[v] = next++;
    for (int v = 0; v < g.n; ++v) map[v] = map[find(v)];

    ContractResult out;
    out.graph.n = next;
    out.vertex_map = map;
    out.edge_map.assign(g.m(), -1);
    for (int e = 0; e < g.m(); ++e) {
        if (in_x[e]) continue;
        int t = map[g.edges[e].first], h = map[g.edges[e].second];
        if (t == h) continue;  // loop formed by the contraction
        out.edge_map[e] = out.graph.m();
        out.graph.edges.push_back({t, h});
    }
    return out;
}

struct TwoSumResult {
    Multigraph graph;
    std::vector<int> map1;  // g1 vertex -> new id (identity)
    std::vector<int> map2;  // g2 vertex -> new id
};

// Remove edge e = (u1,v1) of g1, identify u1 with u2 and v1 with v2 of g2.
// g1's vertices keep their ids; g2's other vertices follow in ascending
// order. Edge order: g1's edges minus e, then g2's edges.
inline TwoSumResult two_sum(const Multigraph& g1, int e, const Multigraph& g2,
                            int u2, int v2) {
    check_edge_index(g1, e, "two_sum");
    check_vertex(g2, u2, "two_sum");
    check_vertex(g2, v2, "two_sum");
    if (u2 == v2) throw UsageError("two_sum: u2 and v2 must be distinct");
    auto [u1, v1] = g1.edges[e];

    TwoSumResult out;
    out.graph.n = g1.n + g2.n - 2;
    out.map1.resize(g1.n);
    for (int v = 0; v < g1.n; ++v) out.map1[v] = v;
    out.map2.assign(g2.n, -1);
    out.map2[u2] = u1;
    out.map2[v2] = v1;
    int next = g1.n;
    for (int v = 0; v < g2.n; ++v)
        if (out.map2[v] == -1) out.map2[v] = next++;

    for (int i = 0; i < g1.m(); ++i)
        if (i != e) out.graph.edges.push_back(g1.edges[i]);
    for (const auto& [t, h] : g2.edges)
        out.graph.edges.push_back({out.map2[t], out.map2[h]});
    return out;
}

// Replace a 3-vertex by a triangle; the i-th former edge at v (edge-list
// order) attaches to triangle corner i. Corner 0 reuses v's id, corners 1,2
// are appended. Cubic graphs stay cubic.
inline Multigraph triangle_expand(const Multigraph& g, int v) {
    check_vertex(g, v, "triangle_expand");
    if (g.degree(v) != 3)
        throw UsageError("triangle_expand: vertex " + std::to_string(v) +
                         " has degree " + std::to_string(g.degree(v)) + ", need 3");
    Multigraph out;
    out.n = g.n + 2;
    int corner[3] = {v, g.n, g.n + 1};
    int slot = 0;
    for (const auto& [t, h] : g.edges) {
        int nt = t, nh = h;
        if (t == v) nt = corner[slot++];
        if (h == v) nh = corner[slot++];
        out.edges.push_back({nt, nh});
    }
    out.edges.push_back({corner[0], corner[1]});
    out.edges.push_back({corner[1], corner[2]});
    out.edges.push_back({corner[2], corner[0]});
    return out;
}

struct SubstituteResult {
    Multigraph graph;
    std::vector<int> host_map;    // host vertex (except v) -> new id
    std::vector<int> gadget_map;  // gadget vertex -> new id
};

// Replace host vertex v by a fresh copy of `gadget`; the i-th host edge at v
// (edge-list order) reattaches to attach[i]. Host vertices keep relative
// order (ids above v shift down by one); gadget vertices are appended.
inline SubstituteResult substitute_vertex(const Multigraph& host, int v,
                                          const Multigraph& gadget,
                                          const std::vector<int>& attach) {
    check_vertex(host, v, "substitute_vertex");
    if (static_cast<int>(attach.size()) != host.degree(v))
        throw UsageError("substitute_vertex: attach arity " +
                         std::to_string(attach.size()) + " != degree " +
                         std::to_string(host.degree(v)));
    std::set<int> uniq(attach.begin(), attach.end());
    if (uniq.size() != attach.size())
        throw UsageError("substitute_vertex: attach vertices must be distinct");
    for (int a : attach) check_vertex(gadget, a, "substitute_vertex attach");

    SubstituteResult out;
    out.graph.n = host.n - 1 + gadget.n;
    out.host_map.assign(host.n, -1);
    for (int w = 0; w < host.n; ++w)
        if (w != v) out.host_map[w] = w < v ? w : w - 1;
    out.gadget_map.resize(gadget.n);
    for (int w = 0; w < gadget.n; ++w) out.gadget_map[w] = host.n - 1 + w;

    int slot = 0;
    for (const auto& [t, h] : host.edges) {
        int nt = t == v ? out.gadget_map[attach[slot++]] : out.host_map[t];
        int nh = h == v ? out.gadget_map[attach[slot++]] : out.host_map[h];
        out.graph.edges.push_back({nt, nh});
    }
    for (const auto& [t, h] : gadget.edges)
        out.graph.edges.push_back({out.gadget_map[t], out.gadget_map[h]});
    return out;
}

// Extract the subgraph formed by the given edges: vertices are the touched
// ones renumbered in ascending order, edges in ascending index order.
struct SubgraphResult {
    Multigraph graph;
    std::vector<int> vertex_of;  // new vertex -> old vertex
};

inline SubgraphResult extract_subgraph(const Multigraph& g, std::vector<int> edge_indices) {
    std::sort(edge_indices.begin(), edge_indices.end());
    edge_indices.erase(std::unique(edge_indices.begin(), edge_indices.end()),
                       edge_indices.end());
    std::set<int> touched;
    for (int e : edge_indices) {
        check_edge_index(g, e, "extract_subgraph");
        touched.insert(g.edges[e].first);
        touched.insert(g.edges[e].second);
    }
    SubgraphResult out;
    std::map<int, int> rank;
    for (int v : touched) {
        rank[v] = static_cast<int>(out.vertex_of.size());
        out.vertex_of.push_back(v);
    }
    out.graph.n = static_cast<int>(touched.size());
    for (int e : edge_indices)
        out.graph.edges.push_back({rank[g.edges[e].first], rank[g.edges[e].second]});
    return out;
}

// ---------------------------------------------------------------------------
// connectivity / cuts

namespace detail {

// unit-capacity max flow between s and t (BFS augmentation; desk scale)
inline int unit_max_flow(const Multigraph& g, int s, int t) {
    struct Arc {
        int to, cap, rev;
    };
    std::vector<std::vector<Arc>> adj(g.n);
    auto add = [&](int a, int b) {
        adj[a].push_back({b, 1, static_cast<int>(adj[b].size())});
        adj[b].push_back({a, 1, static_cast<int>(adj[a].size()) - 1});
    };
    for (const auto& [a, b] : g.edges) add(a, b);
    int flow = 0;
    while (true) {
        std::vector<std::pair<int, int>> prev(g.n, {-1, -1});  // (vertex, arc idx)
        std::deque<int> q{s};
        prev[s] = {s, -1};
        while (!q.empty() && prev[t].first == -1) {
            int u = q.front();
            q.pop_front();
            for (int i = 0; i < static_cast<int>(adj[u].size()); ++i) {
                const Arc& a = adj[u][i];
                if (a.cap > 0 && prev[a.to].first == -1) {
                    prev[a.to] = {u, i};
                    q.push_back(a.to);
                }
            }
        }
        if (prev[t].first == -1) return flow;
        int v = t;
        while (v != s) {
            auto [u, i] = prev[v];
            adj[u][i].cap -= 1;
            adj[adj[u][i].to][adj[u][i].rev].cap += 1;
            v = u;
        }
        ++flow;
    }
}

}  // namespace detail

// Global minimum edge-cut size; 0 for disconnected input (and for n <= 1).
inline int edge_connectivity(const Multigraph& g) {
    if (g.n <= 1) return 0;
    if (!g.connected()) return 0;
    int best = g.m();
    for (int v = 1; v < g.n; ++v)
        best = std::min(best, detail::unit_max_flow(g, 0, v));
    return best;
}

struct EdgeCut {
    std::vector<int> edges;  // ascending edge indices
    std::vector<int> side;   // shore not containing vertex 0
};

namespace detail {

inline bool disconnects(const Multigraph& g, const std::vector<int>& removed,
                        std::vector<bool>* reach_out = nullptr) {
    std::vector<bool> gone(g.m(), false);
    for (int e : removed) gone[e] = true;
    std::vector<std::vector<int>> adj(g.n);
    for (int e = 0; e < g.m(); ++e) {
        if (gone[e]) continue;
        adj[g.edges[e].first].push_back(g.edges[e].second);
        adj[g.edges[e].second].push_back(g.edges[e].first);
    }
    std::vector<bool> seen(g.n, false);
    std::deque<int> q{0};
    seen[0] = true;
    int cnt = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj[u])
            if (!seen[w]) {
                seen[w] = true;
                ++cnt;
                q.push_back(w);
            }
    }
    if (reach_out) *reach_out = seen;
    return cnt != g.n;
}

}  // namespace detail

// All inclusion-minimal edge cuts of size exactly k, in lexicographic order
// of their sorted edge-index sets. Desk-scale guard: k <= 4.
inline std::vector<EdgeCut> enumerate_edge_cuts(const Multigraph& g, int k,
                                                const Deadline& dl = Deadline()) {
    if (k < 1 || k > 4) throw UsageError("enumerate_edge_cuts: k must be in 1..4");
    if (!g.connected()) throw UsageError("enumerate_edge_cuts: graph must be connected");
    std::vector<EdgeCut> out;
    std::vector<int> combo(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            dl.check("enumerate_edge_cuts");
            std::vector<bool> reach;
            if (!detail::disconnects(g, combo, &reach)) return;
            for (int drop = 0; drop < k; ++drop) {
                std::vector<int> sub;
                for (int i = 0; i < k; ++i)
                    if (i != drop) sub.push_back(combo[i]);
                if (detail::disconnects(g, sub)) return;  // not minimal
            }
            EdgeCut cut;
            cut.edges = combo;
            for (int v = 0; v < g.n; ++v)
                if (!reach[v]) cut.side.push_back(v);
            out.push_back(std::move(cut));
            return;
        }
        for (int e = start; e < g.m(); ++e) {
            combo[depth] = e;
            rec(e + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

// All proper 3-edge-colorings by backtracking (test/verifier scale).
inline std::vector<std::vector<int>> proper_three_edge_colorings(const Multigraph& g) {
    std::vector<std::vector<int>> result;
    std::vector<int> color(g.m(), -1);
    std::vector<std::vector<int>> inc(g.n);
    for (int e = 0; e < g.m(); ++e) {
        inc[g.edges[e].first].push_back(e);
        inc[g.edges[e].second].push_back(e);
    }
    auto ok = [&](int e, int c) {
        for (int v : {g.edges[e].first, g.edges[e].second})
            for (int f : inc[v])
                if (f != e && color[f] == c) return false;
        return true;
    };
    std::function<void(int)> rec = [&](int e) {
        if (e == g.m()) {
            result.push_back(color);
            return;
        }
        for (int c = 0; c < 3; ++c)
            if (ok(e, c)) {
                color[e] = c;
                rec(e + 1);
                color[e] = -1;
            }
    };
    rec(0);
    return result;
}

}  // namespace groupconn
