#pragma once

// S-connectivity decision: G is S-connected iff the achievable set equals
// all of Z(G,S). Witnesses are failed boundaries, reported lex-least first.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "groupconn/flow.hpp"

namespace groupconn {

enum class DecisionMethod { BitsetDp, PerBoundary, Certificate };

inline std::string to_string(DecisionMethod m) {
    switch (m) {
        case DecisionMethod::BitsetDp: return "bitset_dp";
        case DecisionMethod::PerBoundary: return "per_boundary";
        case DecisionMethod::Certificate: return "certificate";
    }
    return "?";
}

struct ConnectivityVerdict {
    bool connected = false;
    std::optional<Boundary> witness;          // a failed boundary when not connected
    std::optional<std::uint64_t> failed_count;
    DecisionMethod method = DecisionMethod::BitsetDp;
};

namespace detail {

// A disconnected graph on >= 2 vertices is never S-connected: concentrate a
// nonzero value on one component and its negation on another.
inline ConnectivityVerdict disconnected_verdict(const Multigraph& g,
                                                const AbelianGroup& group) {
    auto comp = g.components();
    ConnectivityVerdict v;
    v.connected = false;
    v.method = DecisionMethod::PerBoundary;
    Boundary beta = zero_boundary(g, group);
    int a = -1, b = -1;
    for (int i = 0; i < g.n; ++i) {
        if (comp[i] == 0 && a == -1) a = i;
        if (comp[i] == 1 && b == -1) b = i;
    }
    GroupElement x = group.enumerate_elements(true).front();
    beta.values[a] = x;
    beta.values[b] = group.negate(x);
    v.witness = beta;
    return v;
}

}  // namespace detail

inline ConnectivityVerdict is_group_connected(const Multigraph& g,
                                              const AbelianGroup& group,
                                              const ExecPolicy& policy = {},
                                              DecisionMethod method = DecisionMethod::BitsetDp) {
    if (g.n >= 2 && !g.connected()) return detail::disconnected_verdict(g, group);

    ConnectivityVerdict v;
    v.method = method;
    if (method == DecisionMethod::PerBoundary) {
        // oracle path: query every boundary through the frontier engine
        std::size_t total = 1;
        for (int i = 0; i + 1 < g.n; ++i) total *= group.order();
        std::uint64_t failed = 0;
        for (std::size_t idx = 0; idx < total; ++idx) {
            policy.deadline.check("per-boundary decision");
            Boundary beta = boundary_from_index(g, group, idx);
            if (!boundary_realizable(g, group, beta, policy)) {
                if (!v.witness) v.witness = beta;
                ++failed;
            }
        }
        v.failed_count = failed;
        v.connected = failed == 0;
        return v;
    }

    BoundarySet set = achievable_boundaries(g, group, policy);
    v.failed_count = set.failed();
    v.connected = set.bits.all();
    if (!v.connected) v.witness = boundary_from_index(g, group, set.bits.first_zero());
    return v;
}

// Up to `limit` failed boundaries in increasing index order; empty iff
// connected. Disconnected graphs yield the single canonical witness.
inline std::vector<Boundary> failed_boundaries(const Multigraph& g,
                                               const AbelianGroup& group, int limit,
                                               const ExecPolicy& policy = {}) {
    std::vector<Boundary> out;
    if (limit <= 0) return out;
    if (g.n >= 2 && !g.connected()) {
        out.push_back(*detail::disconnected_verdict(g, group).witness);
        return out;
    }
    BoundarySet set = achievable_boundaries(g, group, policy);
    if (set.bits.all()) return out;
    for (std::size_t idx = set.bits.first_zero(); idx < set.bits.size(); ++idx) {
        if (set.bits.get(idx)) continue;
        out.push_back(boundary_from_index(g, group, idx));
        if (static_cast<int>(out.size()) == limit) break;
    }
    return out;
}

// Boundary file format: one `<vertex> <element>` line per vertex, elements
// as comma-joined residues; omitted vertices are zero; must be zero-sum.
inline std::string boundary_to_text(const AbelianGroup& group, const Boundary& beta) {
    std::string out;
    for (std::size_t v = 0; v < beta.values.size(); ++v)
        if (!beta.values[v].is_zero())
            out += std::to_string(v) + " " + group.element_to_string(beta.values[v]) +
                   "\n";
    return out;
}

inline Boundary boundary_from_text(const Multigraph& g, const AbelianGroup& group,
                                   const std::string& text) {
    Boundary beta = zero_boundary(g, group);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<bool> seen(g.n, false);
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int v;
        std::string elem;
        if (!(ls >> v)) continue;  // blank
        if (!(ls >> elem))
            throw UsageError("boundary parse error at line " + std::to_string(lineno));
        if (v < 0 || v >= g.n)
            throw UsageError("boundary vertex " + std::to_string(v) + " out of range");
        if (seen[v])
            throw UsageError("boundary vertex " + std::to_string(v) + " repeated");
        seen[v] = true;
        beta.values[v] = group.parse_element(elem);
    }
    if (!is_zero_sum(group, beta)) throw UsageError("boundary file is not zero-sum");
    return beta;
}

// JSON verdict report (stable field order).
inline nlohmann::ordered_json verdict_report(const Multigraph& g,
                                             const AbelianGroup& group,
                                             const ConnectivityVerdict& v,
                                             int frontier_width, double elapsed_ms) {
    nlohmann::ordered_json j;
    j["graph_name"] = g.name;
    j["group"] = group.to_string();
    j["connected"] = v.connected;
    j["method"] = to_string(v.method);
    if (v.witness)
        j["witness"] = boundary_to_text(group, *v.witness);
    else
        j["witness"] = nullptr;
    if (v.failed_count)
        j["failed_count"] = *v.failed_count;
    else
        j["failed_count"] = nullptr;
    j["frontier_width"] = frontier_width;
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

}  // namespace groupconn
