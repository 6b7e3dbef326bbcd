#pragma once

// Compositional proof engine. A certificate concludes (graph, group,
// connected?) and is justified by one rule:
//   Direct                 the decider's verdict on the graph itself
//   Cycle                  closed form for cycles: connected iff |S| >= n+1
//   Contraction            H S-connected subgraph: G connected iff G/H is
//   TwoSumNegative         both parts fail (|S| >= 3): the 2-sum fails
//   SingleBoundaryNegative one unrealizable zero-sum boundary refutes
// Graphs are embedded by construction recipe (catalog name + transformation
// trace); replay rebuilds them and re-verifies every side condition.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "groupconn/catalog.hpp"
#include "groupconn/connectivity.hpp"
#include "groupconn/flow.hpp"

namespace groupconn {
namespace certify {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// graph recipes

inline json recipe_catalog(const std::string& name) {
    return json{{"kind", "catalog"}, {"name", name}};
}
inline json recipe_cycle(int n) { return json{{"kind", "cycle"}, {"n", n}}; }
inline json recipe_contract(const json& base, const std::vector<int>& edges) {
    return json{{"kind", "contract"}, {"base", base}, {"edges", edges}};
}
inline json recipe_subgraph(const json& base, const std::vector<int>& edges) {
    return json{{"kind", "subgraph"}, {"base", base}, {"edges", edges}};
}
inline json recipe_two_sum(const json& g1, int edge, const json& g2, int u2, int v2) {
    return json{{"kind", "two_sum"}, {"g1", g1},  {"edge", edge},
                {"g2", g2},          {"u2", u2},  {"v2", v2}};
}

inline Multigraph evaluate_recipe(const json& r) {
    const std::string kind = r.at("kind");
    if (kind == "catalog") return catalog::catalog_get(r.at("name")).graph;
    if (kind == "cycle") return catalog::cycle(r.at("n"));
    if (kind == "contract")
        return contract(evaluate_recipe(r.at("base")),
                        r.at("edges").get<std::vector<int>>())
            .graph;
    if (kind == "subgraph")
        return extract_subgraph(evaluate_recipe(r.at("base")),
                                r.at("edges").get<std::vector<int>>())
            .graph;
    if (kind == "two_sum")
        return two_sum(evaluate_recipe(r.at("g1")), r.at("edge"),
                       evaluate_recipe(r.at("g2")), r.at("u2"), r.at("v2"))
            .graph;
    throw UsageError("unknown recipe kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// certificate trees

enum class Rule { Direct, Cycle, Contraction, TwoSumNegative, SingleBoundaryNegative };

inline std::string to_string(Rule r) {
    switch (r) {
        case Rule::Direct: return "Direct";
        case Rule::Cycle: return "Cycle";
        case Rule::Contraction: return "Contraction";
        case Rule::TwoSumNegative: return "TwoSumNegative";
        case Rule::SingleBoundaryNegative: return "SingleBoundaryNegative";
    }
    return "?";
}

inline Rule rule_from_string(const std::string& s) {
    if (s == "Direct") return Rule::Direct;
    if (s == "Cycle") return Rule::Cycle;
    if (s == "Contraction") return Rule::Contraction;
    if (s == "TwoSumNegative") return Rule::TwoSumNegative;
    if (s == "SingleBoundaryNegative") return Rule::SingleBoundaryNegative;
    throw UsageError("unknown certificate rule '" + s + "'");
}

struct CertificateTree {
    Rule rule = Rule::Direct;
    json graph;  // recipe
    AbelianGroup group;
    bool connected = false;
    json data = json::object();
    std::vector<CertificateTree> premises;

    json to_json() const {
        json j;
        j["rule"] = to_string(rule);
        j["conclusion"] = json{{"graph", graph},
                               {"group", group.to_string()},
                               {"connected", connected}};
        j["data"] = data;
        json prem = json::array();
        for (const auto& p : premises) prem.push_back(p.to_json());
        j["premises"] = prem;
        return j;
    }

    static CertificateTree from_json(const json& j) {
        CertificateTree t;
        t.rule = rule_from_string(j.at("rule"));
        const json& c = j.at("conclusion");
        t.graph = c.at("graph");
        t.group = parse_group_spec(c.at("group"));
        t.connected = c.at("connected");
        t.data = j.value("data", json::object());
        for (const auto& p : j.at("premises")) t.premises.push_back(from_json(p));
        return t;
    }
};

// Shared verdict cache so repeated Direct leaves over the same graph run the
// decider once per process. Keyed by exact structure; memoization of a pure
// function, so replay semantics are unchanged.
struct CertifyCache {
    std::map<std::string, bool> direct;
};

namespace detail {

inline std::string graph_key(const Multigraph& g, const AbelianGroup& group) {
    std::string k = group.to_string() + "|" + std::to_string(g.n);
    for (const auto& [t, h] : g.edges)
        k += "," + std::to_string(t) + "-" + std::to_string(h);
    return k;
}

inline bool direct_verdict(const Multigraph& g, const AbelianGroup& group,
                           const ExecPolicy& policy, CertifyCache* cache) {
    if (cache) {
        auto key = graph_key(g, group);
        auto it = cache->direct.find(key);
        if (it != cache->direct.end()) return it->second;
        bool v = is_group_connected(g, group, policy).connected;
        cache->direct[key] = v;
        return v;
    }
    return is_group_connected(g, group, policy).connected;
}

inline bool is_cycle_of_length(const Multigraph& g, int n) {
    if (n < 2 || g.n != n || g.m() != n || !g.connected()) return false;
    auto d = g.degrees();
    return std::all_of(d.begin(), d.end(), [](int x) { return x == 2; });
}

inline json boundary_to_json(const AbelianGroup& group, const Boundary& beta) {
    json arr = json::array();
    for (std::size_t v = 0; v < beta.values.size(); ++v)
        if (!beta.values[v].is_zero())
            arr.push_back(json::array(
                {static_cast<int>(v), group.element_to_string(beta.values[v])}));
    return arr;
}

inline Boundary boundary_from_json(const Multigraph& g, const AbelianGroup& group,
                                   const json& arr) {
    Boundary beta = zero_boundary(g, group);
    for (const auto& item : arr) {
        int v = item.at(0);
        if (v < 0 || v >= g.n) throw UsageError("certificate boundary vertex out of range");
        beta.values[v] = group.parse_element(item.at(1));
    }
    return beta;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// rule constructors (validate side conditions eagerly)

inline CertificateTree rule_direct(const json& recipe, const AbelianGroup& group,
                                   const ExecPolicy& policy = {},
                                   CertifyCache* cache = nullptr) {
    CertificateTree t;
    t.rule = Rule::Direct;
    t.graph = recipe;
    t.group = group;
    t.connected = detail::direct_verdict(evaluate_recipe(recipe), group, policy, cache);
    return t;
}

inline CertificateTree rule_cycle_on(const json& recipe, int n, const AbelianGroup& group) {
    if (n < 2) throw UsageError("rule_cycle: n must be >= 2");
    if (!detail::is_cycle_of_length(evaluate_recipe(recipe), n))
        throw UsageError("rule_cycle: recipe does not evaluate to a cycle of length " +
                         std::to_string(n));
    CertificateTree t;
    t.rule = Rule::Cycle;
    t.graph = recipe;
    t.group = group;
    t.connected = group.order() >= n + 1;
    t.data = json{{"n", n}};
    return t;
}

inline CertificateTree rule_cycle(int n, const AbelianGroup& group) {
    return rule_cycle_on(recipe_cycle(n), n, group);
}

inline CertificateTree rule_contraction(const json& recipe, const std::vector<int>& h_edges,
                                        const AbelianGroup& group,
                                        CertificateTree premise_h,
                                        CertificateTree premise_quotient) {
    if (premise_h.group != group || premise_quotient.group != group)
        throw UsageError("rule_contraction: group mismatch in premises");
    if (!premise_h.connected)
        throw UsageError("rule_contraction: subgraph premise must conclude connected");
    Multigraph g = evaluate_recipe(recipe);
    if (!evaluate_recipe(premise_h.graph)
             .equal_structure(extract_subgraph(g, h_edges).graph))
        throw UsageError("rule_contraction: subgraph premise does not match h_edges");
    if (!evaluate_recipe(premise_quotient.graph)
             .equal_structure(contract(g, h_edges).graph))
        throw UsageError("rule_contraction: quotient premise does not match contraction");
    CertificateTree t;
    t.rule = Rule::Contraction;
    t.graph = recipe;
    t.group = group;
    t.connected = premise_quotient.connected;
    t.data = json{{"h_edges", h_edges}};
    t.premises = {std::move(premise_h), std::move(premise_quotient)};
    return t;
}

inline CertificateTree rule_two_sum_negative(const json& conclusion_recipe, int edge,
                                             int u2, int v2, const AbelianGroup& group,
                                             CertificateTree premise1,
                                             CertificateTree premise2) {
    if (group.order() < 3) throw UsageError("rule_two_sum_negative: requires |S| >= 3");
    if (premise1.group != group || premise2.group != group)
        throw UsageError("rule_two_sum_negative: group mismatch in premises");
    if (premise1.connected || premise2.connected)
        throw UsageError("rule_two_sum_negative: premises must conclude not connected");
    Multigraph sum = two_sum(evaluate_recipe(premise1.graph), edge,
                             evaluate_recipe(premise2.graph), u2, v2)
                         .graph;
    if (!sum.equal_structure(evaluate_recipe(conclusion_recipe)))
        throw UsageError("rule_two_sum_negative: conclusion graph does not match 2-sum");
    CertificateTree t;
    t.rule = Rule::TwoSumNegative;
    t.graph = conclusion_recipe;
    t.group = group;
    t.connected = false;
    t.data = json{{"edge", edge}, {"u2", u2}, {"v2", v2}};
    t.premises = {std::move(premise1), std::move(premise2)};
    return t;
}

inline CertificateTree rule_single_boundary_negative(const json& recipe,
                                                     const AbelianGroup& group,
                                                     const Boundary& beta,
                                                     const ExecPolicy& policy = {}) {
    Multigraph g = evaluate_recipe(recipe);
    if (static_cast<int>(beta.values.size()) != g.n)
        throw UsageError("rule_single_boundary_negative: boundary arity mismatch");
    if (!is_zero_sum(group, beta))
        throw UsageError("rule_single_boundary_negative: boundary not zero-sum");
    if (boundary_realizable(g, group, beta, policy))
        throw UsageError("rule_single_boundary_negative: a flow exists for this boundary; "
                         "certificate invalid");
    CertificateTree t;
    t.rule = Rule::SingleBoundaryNegative;
    t.graph = recipe;
    t.group = group;
    t.connected = false;
    t.data = json{{"boundary", detail::boundary_to_json(group, beta)}};
    return t;
}

// ---------------------------------------------------------------------------
// replay

struct CheckResult {
    bool ok = true;
    std::string fail_path;
    std::string detail;
};

namespace detail {

struct CheckFailure {
    std::string path;
    std::string why;
};

inline void replay(const CertificateTree& t, const std::string& path,
                   const ExecPolicy& policy, CertifyCache* cache) {
    auto fail = [&](const std::string& why) {
        throw CheckFailure{path, why};
    };
    Multigraph g = evaluate_recipe(t.graph);
    switch (t.rule) {
        case Rule::Direct: {
            if (!t.premises.empty()) fail("Direct leaf must have no premises");
            bool v = direct_verdict(g, t.group, policy, cache);
            if (v != t.connected) fail("Direct verdict mismatch");
            break;
        }
        case Rule::Cycle: {
            if (!t.premises.empty()) fail("Cycle leaf must have no premises");
            int n = t.data.at("n");
            if (!is_cycle_of_length(g, n)) fail("graph is not a cycle of the stated length");
            if ((t.group.order() >= n + 1) != t.connected)
                fail("cycle verdict does not match |S| >= n+1");
            break;
        }
        case Rule::Contraction: {
            if (t.premises.size() != 2) fail("Contraction needs exactly two premises");
            const auto& ph = t.premises[0];
            const auto& pq = t.premises[1];
            if (ph.group != t.group || pq.group != t.group) fail("premise group mismatch");
            if (!ph.connected) fail("subgraph premise must conclude connected");
            auto h_edges = t.data.at("h_edges").get<std::vector<int>>();
            if (!evaluate_recipe(ph.graph)
                     .equal_structure(extract_subgraph(g, h_edges).graph))
                fail("subgraph premise does not match h_edges");
            if (!evaluate_recipe(pq.graph).equal_structure(contract(g, h_edges).graph))
                fail("quotient premise does not match contraction");
            if (t.connected != pq.connected) fail("conclusion must equal quotient verdict");
            replay(ph, path + "/premises[0]", policy, cache);
            replay(pq, path + "/premises[1]", policy, cache);
            break;
        }
        case Rule::TwoSumNegative: {
            if (t.premises.size() != 2) fail("TwoSumNegative needs exactly two premises");
            if (t.group.order() < 3) fail("TwoSumNegative requires |S| >= 3");
            if (t.connected) fail("TwoSumNegative concludes not connected");
            const auto& p1 = t.premises[0];
            const auto& p2 = t.premises[1];
            if (p1.group != t.group || p2.group != t.group) fail("premise group mismatch");
            if (p1.connected || p2.connected)
                fail("TwoSumNegative premises must conclude not connected");
            Multigraph sum = two_sum(evaluate_recipe(p1.graph), t.data.at("edge"),
                                     evaluate_recipe(p2.graph), t.data.at("u2"),
                                     t.data.at("v2"))
                                 .graph;
            if (!sum.equal_structure(g)) fail("conclusion graph does not match 2-sum");
            replay(p1, path + "/premises[0]", policy, cache);
            replay(p2, path + "/premises[1]", policy, cache);
            break;
        }
        case Rule::SingleBoundaryNegative: {
            if (!t.premises.empty()) fail("SingleBoundaryNegative must have no premises");
            if (t.connected) fail("SingleBoundaryNegative concludes not connected");
            Boundary beta = boundary_from_json(g, t.group, t.data.at("boundary"));
            if (!is_zero_sum(t.group, beta)) fail("embedded boundary not zero-sum");
            if (boundary_realizable(g, t.group, beta, policy))
                fail("embedded boundary is realizable; refutation fails");
            break;
        }
    }
}

}  // namespace detail

inline CheckResult check_certificate(const CertificateTree& t,
                                     const ExecPolicy& policy = {},
                                     CertifyCache* cache = nullptr) {
    try {
        detail::replay(t, "root", policy, cache);
        return {};
    } catch (const detail::CheckFailure& f) {
        return {false, f.path, f.why};
    } catch (const UsageError& e) {
        return {false, "root", e.what()};
    } catch (const nlohmann::json::exception& e) {
        return {false, "root", std::string("malformed certificate: ") + e.what()};
    }
    // Timeouts and resource limits propagate: an interrupted replay is
    // indeterminate, not false.
}

// ---------------------------------------------------------------------------
// standalone verifiers

struct K4LemmaReport {
    bool property_holds = false;
    int flows_checked = 0;
    bool contains_all_ones = false;
};

// Enumerate all 3^6 nowhere-zero Z4 assignments on the fixed K4 orientation,
// keep those with boundary (1,1,1,1), and confirm each has a vertex whose
// incident edges all contribute -1 to its boundary (in with value 1 / out
// with value 3).
inline K4LemmaReport verify_k4_lemma() {
    Multigraph g = catalog::k4();
    AbelianGroup z4({4});
    K4LemmaReport rep;
    rep.property_holds = true;
    std::array<int, 6> val{};
    std::function<void(int)> rec = [&](int e) {
        if (e == 6) {
            std::array<int, 4> b{};
            for (int i = 0; i < 6; ++i) {
                b[g.edges[i].first] = z4.add_index(b[g.edges[i].first], val[i]);
                b[g.edges[i].second] = z4.sub_index(b[g.edges[i].second], val[i]);
            }
            if (b != std::array<int, 4>{1, 1, 1, 1}) return;
            ++rep.flows_checked;
            if (std::all_of(val.begin(), val.end(), [](int x) { return x == 1; }))
                rep.contains_all_ones = true;
            bool vertex_found = false;
            for (int v = 0; v < 4 && !vertex_found; ++v) {
                bool ok = true;
                for (int i = 0; i < 6 && ok; ++i) {
                    if (g.edges[i].first == v && val[i] != 3) ok = false;
                    if (g.edges[i].second == v && val[i] != 1) ok = false;
                }
                vertex_found = ok;
            }
            rep.property_holds = rep.property_holds && vertex_found;
            return;
        }
        for (int x = 1; x <= 3; ++x) {
            val[e] = x;
            rec(e + 1);
        }
    };
    rec(0);
    return rep;
}

struct ColoringReport {
    int coloring_count = 0;
    bool unique_partition = false;
    std::array<std::vector<int>, 3> classes;  // canonical partition, by smallest edge
};

inline ColoringReport edge_coloring_report(const Multigraph& g) {
    ColoringReport rep;
    auto colorings = proper_three_edge_colorings(g);
    rep.coloring_count = static_cast<int>(colorings.size());
    if (colorings.empty()) return rep;
    auto canon = [&](const std::vector<int>& c) {
        std::array<std::vector<int>, 3> cls;
        std::array<int, 3> remap = {-1, -1, -1};
        int next = 0;
        for (int e = 0; e < g.m(); ++e) {
            if (remap[c[e]] == -1) remap[c[e]] = next++;
            cls[remap[c[e]]].push_back(e);
        }
        return cls;
    };
    rep.classes = canon(colorings.front());
    rep.unique_partition = std::all_of(
        colorings.begin(), colorings.end(),
        [&](const std::vector<int>& c) { return canon(c) == rep.classes; });
    return rep;
}

// All proper 3-edge-colorings of the 3-prism induce the same partition into
// three perfect matchings; there are exactly 3! of them.
inline ColoringReport verify_prism_coloring() {
    return edge_coloring_report(catalog::prism());
}

// True iff for every even-order N ⊆ V there is a spanning connected subgraph
// whose odd-degree vertices are exactly N. Plain subset enumeration with a
// parity table; desk-scale guard m <= 24.
inline bool is_collapsible(const Multigraph& g, const Deadline& dl = Deadline()) {
    if (g.m() > 24) throw UsageError("is_collapsible: size guard exceeded (m > 24)");
    if (g.n > 25) throw UsageError("is_collapsible: size guard exceeded (n > 25)");
    if (g.n == 0) return true;
    const int m = g.m();
    std::vector<std::uint32_t> edge_parity(m);
    for (int e = 0; e < m; ++e)
        edge_parity[e] = (std::uint32_t(1) << g.edges[e].first) |
                         (std::uint32_t(1) << g.edges[e].second);
    std::vector<bool> achieved(std::size_t(1) << g.n, false);
    std::vector<int> parent(g.n);
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << m); ++mask) {
        if ((mask & 0xfff) == 0) dl.check("is_collapsible");
        // spanning connected check via union-find
        for (int v = 0; v < g.n; ++v) parent[v] = v;
        std::function<int(int)> find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        int comps = g.n;
        std::uint32_t parity = 0;
        for (int e = 0; e < m; ++e) {
            if (!(mask >> e & 1)) continue;
            parity ^= edge_parity[e];
            int a = find(g.edges[e].first), b = find(g.edges[e].second);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        if (comps == 1) achieved[parity] = true;
    }
    for (std::uint32_t nset = 0; nset < (std::uint32_t(1) << g.n); ++nset)
        if (__builtin_popcount(nset) % 2 == 0 && !achieved[nset]) return false;
    return true;
}

}  // namespace certify
}  // namespace groupconn
