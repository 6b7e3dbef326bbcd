#pragma once

// Named graphs and constructions: the two 15-vertex gadgets H1/H2, their
// 2-sum compositions H_i^1/H_i^2/H_i^3, and the two cubic counterexample
// graphs obtained by substituting gadget copies into K4 and the 3-prism.
// All builders are deterministic; emission is byte-stable.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "groupconn/flow.hpp"
#include "groupconn/graph.hpp"

namespace groupconn {
namespace catalog {

// H1: 15 vertices, 21 edges, exactly three 2-vertices x1=0, y1=1, z1=13.
// Transcribed from the drawn gadget; a drawn segment passing through an
// interior marked point is split into two edges there. Validated by the
// decider: Z2xZ2-connected, not Z4-connected.
inline Multigraph h1() {
    Multigraph g;
    g.name = "H1";
    g.n = 15;
    g.edges = {{2, 3},  {4, 3},  {4, 14}, {14, 5}, {6, 5},   {6, 1},   {1, 2},
               {7, 0},  {0, 14}, {3, 8},  {4, 9},  {5, 10},  {6, 11},  {12, 2},
               {7, 8},  {8, 9},  {9, 10}, {10, 11}, {11, 13}, {13, 12}, {12, 7}};
    g.vertex_labels = {{0, "x1"}, {1, "y1"}, {13, "z1"}};
    return g;
}

// H2: same vertex count and 2-vertex profile (x2=0, y2=1, z2=13) but a
// different edge set; Z4-connected, not Z2xZ2-connected.
inline Multigraph h2() {
    Multigraph g;
    g.name = "H2";
    g.n = 15;
    g.edges = {{2, 3},  {4, 3},  {4, 14}, {14, 5}, {6, 5},   {6, 1},   {1, 2},
               {7, 0},  {0, 14}, {3, 8},  {4, 9},  {5, 10},  {6, 11},  {12, 2},
               {7, 8},  {8, 9},  {9, 10}, {10, 13}, {13, 11}, {11, 12}, {12, 7}};
    g.vertex_labels = {{0, "x2"}, {1, "y2"}, {13, "z2"}};
    return g;
}

inline Multigraph cycle(int n, const std::string& name = "") {
    if (n < 2) throw UsageError("cycle: n must be >= 2");
    Multigraph g;
    g.name = name.empty() ? "C" + std::to_string(n) : name;
    g.n = n;
    for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
    return g;
}

// K4 with the fixed reference orientation used by the all-ones flow check:
// with every edge valued 1 the boundary is (1,1,1,1).
inline Multigraph k4() {
    Multigraph g;
    g.name = "K4";
    g.n = 4;
    g.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}, {2, 0}};
    g.vertex_labels = {{0, "v1"}, {1, "v2"}, {2, "v3"}, {3, "v4"}};
    return g;
}

// 3-prism: triangles 0-1-2 and 3-4-5 joined by the matching i..i+3.
inline Multigraph prism() {
    Multigraph g;
    g.name = "prism";
    g.n = 6;
    g.edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3},
               {0, 3}, {1, 4}, {2, 5}};
    return g;
}

// ---------------------------------------------------------------------------
// 2-sum compositions. Gadget 2-vertices: x=0, y=1, z=13; in H_i^1 the third
// 2-vertex z lands on vertex 15, and in H_i^2 the two remaining 2-vertices
// are z=15 and z'=28.

inline Multigraph h_i(int i) { return i == 1 ? h1() : h2(); }

inline Multigraph h_i_1(int i) {
    auto res = two_sum(cycle(4), 0, h_i(i), 0, 1);
    res.graph.name = "H" + std::to_string(i) + "_1";
    res.graph.vertex_labels = {{0, "x"}, {1, "y"}, {15, "z"}};
    return res.graph;
}

inline Multigraph h_i_2(int i) {
    // second 2-sum on the opposite C4 edge (2,3); tail pairs with y', head with x'
    auto res = two_sum(h_i_1(i), 1, h_i(i), 1, 0);
    res.graph.name = "H" + std::to_string(i) + "_2";
    res.graph.vertex_labels = {{15, "z"}, {28, "z'"}};
    return res.graph;
}

// Edge layout of H_i^2: [0] and [1] are the surviving C4 edges, the first
// gadget copy sits at 2..22 and the second at 23..43.
inline std::vector<int> h_i_2_gadget_edges(int which) {
    std::vector<int> out;
    int start = which == 0 ? 2 : 23;
    for (int e = start; e < start + 21; ++e) out.push_back(e);
    return out;
}

inline Multigraph h_i_3(int i) {
    Multigraph cur = cycle(4);
    for (int copy = 0; copy < 3; ++copy)
        cur = two_sum(cur, 0, h_i_2(i), 15, 28).graph;
    cur.name = "H" + std::to_string(i) + "_3";
    cur.vertex_labels = {{0, "v1"}, {1, "v2"}, {2, "v3"}, {3, "v4"}};
    return cur;
}

// Edge layout of H_i^3: [0] is the last surviving C4 edge; the three H_i^2
// copies occupy 1..44, 45..88, 89..132. After contracting a copy the next
// one slides into 1..44 again.
inline std::vector<int> h_i_3_copy_edges(int copy) {
    std::vector<int> out;
    for (int e = 1 + 44 * copy; e < 45 + 44 * copy; ++e) out.push_back(e);
    return out;
}

// ---------------------------------------------------------------------------
// cubic constructions

struct GadgetSubstitution {
    Multigraph graph;
    // copies[k][v] = vertex of `graph` holding gadget vertex v of copy k
    std::vector<std::vector<int>> copies;
    int host_edge_count = 0;  // host edges sit at 0..host_edge_count-1
};

namespace detail {

inline GadgetSubstitution substitute_all(const Multigraph& host, const Multigraph& gadget,
                                         const std::vector<std::vector<int>>& attach_per_vertex) {
    GadgetSubstitution out;
    out.host_edge_count = host.m();
    Multigraph cur = host;
    std::vector<std::vector<int>> emb(host.n);
    for (int step = 0; step < host.n; ++step) {
        // vertex 0 of `cur` is original host vertex `step`
        auto res = substitute_vertex(cur, 0, gadget, attach_per_vertex[step]);
        for (auto& copy : emb)
            if (!copy.empty())
                for (auto& v : copy) v = res.host_map[v];
        emb[step] = res.gadget_map;
        cur = std::move(res.graph);
    }
    out.graph = std::move(cur);
    out.copies = std::move(emb);
    return out;
}

}  // namespace detail

// Replace every K4 vertex with a copy of H1, each 2-vertex meeting one host
// edge: 60 vertices, 90 edges, cubic, 3-edge-connected.
inline GadgetSubstitution cubic_from_k4() {
    Multigraph host = k4();
    std::vector<std::vector<int>> attach(4, {0, 1, 13});  // x, y, z per edge slot
    auto out = detail::substitute_all(host, h1(), attach);
    out.graph.name = "cubicZ22notZ4";
    out.graph.vertex_labels.clear();
    for (int k = 0; k < 4; ++k) {
        out.graph.vertex_labels[out.copies[k][0]] = "x" + std::to_string(k + 1);
        out.graph.vertex_labels[out.copies[k][1]] = "y" + std::to_string(k + 1);
        out.graph.vertex_labels[out.copies[k][13]] = "z" + std::to_string(k + 1);
    }
    return out;
}

// The unique 1-factorization of the 3-prism as three edge classes a, b, c,
// ordered by smallest edge index. Computed from the coloring enumeration.
inline std::array<std::vector<int>, 3> prism_color_classes() {
    Multigraph p = prism();
    auto colorings = proper_three_edge_colorings(p);
    if (colorings.empty()) throw std::logic_error("prism must be 3-edge-colorable");
    const auto& c = colorings.front();
    std::array<std::vector<int>, 3> classes;
    std::array<int, 3> remap = {-1, -1, -1};
    int next = 0;
    for (int e = 0; e < p.m(); ++e) {
        if (remap[c[e]] == -1) remap[c[e]] = next++;
        classes[remap[c[e]]].push_back(e);
    }
    return classes;
}

// Replace every prism vertex with a copy of H2 so that the six copies
// realize all six assignments of (x,y,z) to the three color classes:
// 90 vertices, 135 edges, cubic, 3-edge-connected.
inline GadgetSubstitution cubic_from_prism() {
    Multigraph host = prism();
    auto classes = prism_color_classes();
    std::vector<int> edge_color(host.m());
    for (int c = 0; c < 3; ++c)
        for (int e : classes[c]) edge_color[e] = c;

    // the six permutations (p,q,r) of the classes, lexicographic
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const int marked[3] = {0, 1, 13};  // x, y, z of the gadget
    std::vector<std::vector<int>> attach(6);
    for (int v = 0; v < 6; ++v) {
        std::array<int, 3> vertex_of_color{};  // color class -> gadget vertex
        for (int j = 0; j < 3; ++j) vertex_of_color[perms[v][j]] = marked[j];
        for (int e : host.incident_edges(v))
            attach[v].push_back(vertex_of_color[edge_color[e]]);
    }
    auto out = detail::substitute_all(host, h2(), attach);
    out.graph.name = "cubicZ4notZ22";
    out.graph.vertex_labels.clear();
    for (int k = 0; k < 6; ++k) {
        out.graph.vertex_labels[out.copies[k][0]] = "x" + std::to_string(k + 1);
        out.graph.vertex_labels[out.copies[k][1]] = "y" + std::to_string(k + 1);
        out.graph.vertex_labels[out.copies[k][13]] = "z" + std::to_string(k + 1);
    }
    return out;
}

// Gadget-copy edge spans of the cubic graphs: host edges first, then one
// 21-edge block per copy. After contracting a copy the next block slides
// into the same position.
inline std::vector<int> cubic_copy_edges(int host_edges, int copy) {
    std::vector<int> out;
    for (int e = host_edges + 21 * copy; e < host_edges + 21 * (copy + 1); ++e)
        out.push_back(e);
    return out;
}

// ---------------------------------------------------------------------------
// boundary-transfer builders for the negative certificates

// K4-based graph: shift beta1 down by 1 at each copy's three attach
// vertices; stays zero-sum since 12 * 1 = 0 (mod 4).
inline Boundary build_k4_boundary(const AbelianGroup& group, const Boundary& beta1,
                                        const GadgetSubstitution& c) {
    if (group.order() != 4 || group.rank() != 1)
        throw UsageError("build_k4_boundary expects Z4");
    if (beta1.values.size() != 15) throw UsageError("beta1 must live on the 15-vertex gadget");
    if (!is_zero_sum(group, beta1)) throw UsageError("beta1 not zero-sum");
    GroupElement one = group.index_element(1);
    Boundary out{std::vector<GroupElement>(c.graph.n, group.zero())};
    for (const auto& copy : c.copies)
        for (int v = 0; v < 15; ++v) {
            GroupElement val = beta1.values[v];
            if (v == 0 || v == 1 || v == 13) val = group.sub(val, one);
            out.values[copy[v]] = val;
        }
    if (!is_zero_sum(group, out)) throw std::logic_error("transferred boundary lost zero-sum");
    return out;
}

// Prism-based graph: shift by (0,1) at x_i, (1,0) at y_i, (1,1) at z_i.
inline Boundary build_prism_boundary(const AbelianGroup& group, const Boundary& beta1,
                                     const GadgetSubstitution& c) {
    if (group.factors() != std::vector<int>{2, 2})
        throw UsageError("build_prism_boundary expects Z2xZ2");
    if (beta1.values.size() != 15) throw UsageError("beta1 must live on the 15-vertex gadget");
    if (!is_zero_sum(group, beta1)) throw UsageError("beta1 not zero-sum");
    std::map<int, GroupElement> delta = {
        {0, GroupElement{{0, 1}}}, {1, GroupElement{{1, 0}}}, {13, GroupElement{{1, 1}}}};
    Boundary out{std::vector<GroupElement>(c.graph.n, group.zero())};
    for (const auto& copy : c.copies)
        for (int v = 0; v < 15; ++v) {
            GroupElement val = beta1.values[v];
            auto it = delta.find(v);
            if (it != delta.end()) val = group.sub(val, it->second);
            out.values[copy[v]] = val;
        }
    if (!is_zero_sum(group, out)) throw std::logic_error("transferred boundary lost zero-sum");
    return out;
}

// ---------------------------------------------------------------------------
// catalog lookup

struct CatalogEntry {
    std::string name;
    Multigraph graph;
    std::map<std::string, int> marked;  // label -> vertex
    std::string provenance;
};

inline std::vector<std::string> catalog_names() {
    return {"C2",   "C3",   "C4",   "C5",   "C6",   "K4",   "prism",
            "H1",   "H2",   "H1_1", "H2_1", "H1_2", "H2_2", "H1_3",
            "H2_3", "cubicZ22notZ4", "cubicZ4notZ22"};
}

inline CatalogEntry catalog_get(const std::string& name) {
    CatalogEntry e;
    e.name = name;
    if (name.size() == 2 && name[0] == 'C' && name[1] >= '2' && name[1] <= '6') {
        e.graph = cycle(name[1] - '0');
        e.provenance = "cycle";
    } else if (name == "K4") {
        e.graph = k4();
        e.provenance = "complete graph on 4 vertices, fixed orientation";
    } else if (name == "prism") {
        e.graph = prism();
        e.provenance = "two triangles plus a perfect matching";
    } else if (name == "H1" || name == "H2") {
        e.graph = name == "H1" ? h1() : h2();
        e.provenance = "transcribed 15-vertex gadget with three 2-vertices";
    } else if (name == "H1_1" || name == "H2_1") {
        e.graph = h_i_1(name[1] - '0');
        e.provenance = "C4 two-summed with one gadget copy";
    } else if (name == "H1_2" || name == "H2_2") {
        e.graph = h_i_2(name[1] - '0');
        e.provenance = "C4 two-summed with two gadget copies";
    } else if (name == "H1_3" || name == "H2_3") {
        e.graph = h_i_3(name[1] - '0');
        e.provenance = "C4 two-summed with three H_i^2 copies";
    } else if (name == "cubicZ22notZ4") {
        e.graph = cubic_from_k4().graph;
        e.provenance = "K4 with every vertex substituted by an H1 copy";
    } else if (name == "cubicZ4notZ22") {
        e.graph = cubic_from_prism().graph;
        e.provenance = "3-prism with every vertex substituted by an H2 copy, "
                       "copies realizing all six color permutations";
    } else {
        throw UsageError("unknown catalog name '" + name + "'");
    }
    for (const auto& [v, s] : e.graph.vertex_labels) e.marked[s] = v;
    return e;
}

}  // namespace catalog
}  // namespace groupconn
