#pragma once

// Flow engines: boundary evaluation, nowhere-zero flow search with a
// prescribed boundary (spanning-tree enumeration and frontier DP), and the
// dense dynamic program computing the full achievable-boundary set.
//
// Boundary encoding: a zero-sum boundary on n vertices is indexed by the
// mixed-radix number over element_index at vertices 0..n-2, vertex 0 least
// significant; the value at vertex n-1 is implicit (the negated sum), so
// every index in [0, |S|^(n-1)) is exactly one zero-sum boundary.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "groupconn/graph.hpp"
#include "groupconn/group.hpp"
#include "groupconn/util.hpp"

namespace groupconn {

struct ExecPolicy {
    std::uint64_t memory_budget_bytes = std::uint64_t(1) << 30;  // 1 GiB
    int workers = default_workers();
    Deadline deadline;
};

struct FlowAssignment {
    std::vector<GroupElement> values;  // per edge, under the reference orientation
};

struct Boundary {
    std::vector<GroupElement> values;  // per vertex
};

inline Boundary zero_boundary(const Multigraph& g, const AbelianGroup& group) {
    return {std::vector<GroupElement>(g.n, group.zero())};
}

inline bool is_zero_sum(const AbelianGroup& group, const Boundary& beta) {
    GroupElement s = group.zero();
    for (const auto& v : beta.values) s = group.add(s, v);
    return s.is_zero();
}

// ∂φ(u) = sum of outgoing values minus sum of incoming values.
inline Boundary boundary_of(const Multigraph& g, const AbelianGroup& group,
                            const FlowAssignment& phi) {
    if (static_cast<int>(phi.values.size()) != g.m())
        throw UsageError("flow assignment arity mismatch");
    Boundary out = zero_boundary(g, group);
    for (int e = 0; e < g.m(); ++e) {
        group.require_valid(phi.values[e]);
        auto [t, h] = g.edges[e];
        out.values[t] = group.add(out.values[t], phi.values[e]);
        out.values[h] = group.sub(out.values[h], phi.values[e]);
    }
    return out;
}

namespace detail {

inline std::vector<int> boundary_to_indices(const AbelianGroup& group,
                                            const Boundary& beta) {
    std::vector<int> out;
    out.reserve(beta.values.size());
    for (const auto& v : beta.values) out.push_back(group.element_index(v));
    return out;
}

inline std::vector<std::size_t> digit_pows(int order, int count) {
    std::vector<std::size_t> pows(count + 1);
    pows[0] = 1;
    for (int i = 0; i < count; ++i) pows[i + 1] = pows[i] * order;
    return pows;
}

}  // namespace detail

inline std::size_t boundary_index(const Multigraph& g, const AbelianGroup& group,
                                  const Boundary& beta) {
    if (static_cast<int>(beta.values.size()) != g.n)
        throw UsageError("boundary arity mismatch");
    std::size_t idx = 0, mul = 1;
    for (int v = 0; v + 1 < g.n; ++v) {
        idx += static_cast<std::size_t>(group.element_index(beta.values[v])) * mul;
        mul *= group.order();
    }
    return idx;
}

inline Boundary boundary_from_index(const Multigraph& g, const AbelianGroup& group,
                                    std::size_t idx) {
    Boundary out;
    out.values.reserve(g.n);
    int sum = 0;
    for (int v = 0; v + 1 < g.n; ++v) {
        int d = static_cast<int>(idx % group.order());
        idx /= group.order();
        sum = group.add_index(sum, d);
        out.values.push_back(group.index_element(d));
    }
    out.values.push_back(group.index_element(group.negate_index(sum)));
    return out;
}

// The achievable set A(G,S) = { ∂φ : φ nowhere-zero } as a dense bit vector.
struct BoundarySet {
    AbelianGroup group;
    int n = 0;
    BitVec bits;

    std::size_t universe() const { return bits.size(); }
    std::size_t achieved() const { return bits.count(); }
    std::size_t failed() const { return bits.size() - bits.count(); }

    bool contains(const Multigraph& g, const Boundary& beta) const {
        if (!is_zero_sum(group, beta)) throw UsageError("boundary not zero-sum");
        return bits.get(boundary_index(g, group, beta));
    }
};

// ---------------------------------------------------------------------------
// dense DP over edges: start from {zero boundary}; each edge (u,v) replaces
// the set by the union over nonzero x of its image under "add x at u,
// subtract x at v". The per-x image is a digit permutation on the index.

inline BoundarySet achievable_boundaries(const Multigraph& g, const AbelianGroup& group,
                                         const ExecPolicy& policy = {}) {
    if (!g.connected())
        throw UsageError("achievable_boundaries: graph must be connected");
    const int S = group.order();
    const int digits = g.n - 1;
    // budget guard before allocating (three buffers: current, next, temp)
    long double nbits_ld = 1;
    for (int i = 0; i < digits; ++i) nbits_ld *= S;
    long double required = nbits_ld / 8 * 3 + 4096;
    if (required > static_cast<long double>(policy.memory_budget_bytes))
        throw ResourceLimitError(
            "achievable_boundaries: memory budget exceeded",
            required > 1e18 ? ~std::uint64_t(0) : static_cast<std::uint64_t>(required));

    auto pows = detail::digit_pows(S, digits);
    const std::size_t N = pows[digits];
    BitVec cur(N), nxt(N), tmp(N);
    cur.set(0);

    // digit rewrite tables per nonzero x
    std::vector<std::vector<int>> tab_add(S), tab_sub(S);
    for (int x = 1; x < S; ++x) {
        tab_add[x].resize(S);
        tab_sub[x].resize(S);
        for (int d = 0; d < S; ++d) {
            tab_add[x][d] = group.add_index(d, x);
            tab_sub[x][d] = group.sub_index(d, x);
        }
    }

    for (auto [u, v] : g.edges) {
        nxt.clear();
        for (int x = 1; x < S; ++x) {
            policy.deadline.check("achievable_boundaries");
            bool u_expl = u < digits, v_expl = v < digits;
            if (u_expl && v_expl) {
                detail::apply_digit_perm(cur, tmp, pows[u], tab_add[x], true,
                                         policy.workers);
                detail::apply_digit_perm(tmp, nxt, pows[v], tab_sub[x], false,
                                         policy.workers);
            } else if (u_expl) {
                detail::apply_digit_perm(cur, nxt, pows[u], tab_add[x], false,
                                         policy.workers);
            } else {
                detail::apply_digit_perm(cur, nxt, pows[v], tab_sub[x], false,
                                         policy.workers);
            }
        }
        std::swap(cur, nxt);
    }
    return BoundarySet{group, g.n, std::move(cur)};
}

// ---------------------------------------------------------------------------
// edge ordering heuristic: greedily pick the edge minimizing the number of
// vertices that stay active (incident to both processed and unprocessed
// edges), ties broken by edge index. The reported width bounds the frontier
// DP state count by |S|^width.

struct EdgeOrder {
    std::vector<int> order;
    int width = 0;
};

inline EdgeOrder edge_order_heuristic(const Multigraph& g) {
    const int m = g.m();
    std::vector<int> remaining = g.degrees();
    std::vector<bool> used(m, false), active(g.n, false);
    EdgeOrder out;
    out.order.reserve(m);
    int active_count = 0;
    for (int step = 0; step < m; ++step) {
        int best = -1, best_after = 0;
        for (int e = 0; e < m; ++e) {
            if (used[e]) continue;
            auto [t, h] = g.edges[e];
            int after = active_count;
            if (!active[t]) ++after;
            if (!active[h]) ++after;
            if (remaining[t] == 1) --after;
            if (remaining[h] == 1) --after;
            if (best == -1 || after < best_after) {
                best = e;
                best_after = after;
            }
        }
        auto [t, h] = g.edges[best];
        used[best] = true;
        for (int v : {t, h}) {
            if (!active[v]) {
                active[v] = true;
                ++active_count;
            }
            --remaining[v];
        }
        for (int v : {t, h})
            if (remaining[v] == 0 && active[v]) {
                active[v] = false;
                --active_count;
            }
        out.order.push_back(best);
        out.width = std::max(out.width, active_count);
    }
    return out;
}

// ---------------------------------------------------------------------------
// frontier DP on a single connected component

namespace detail {

struct FrontierStep {
    int edge = -1;
    int slot_u = 0, slot_v = 0;            // slot positions during the update
    std::vector<int> inserted_slots;       // positions of digits added this step
    std::vector<std::pair<int, int>> drops;  // (slot position, forced value), in order
    BitVec before;                         // state set before the update (with inserts)
};

struct FrontierOutcome {
    bool exists = false;
    std::vector<int> values;  // per local edge, element indices (when witnessed)
    int width = 0;
};

// beta given as element indices per local vertex; graph must be connected.
inline FrontierOutcome frontier_component(const Multigraph& g, const AbelianGroup& group,
                                          const std::vector<int>& beta,
                                          const std::vector<int>& order,
                                          const ExecPolicy& policy, bool want_witness) {
    const int S = group.order();
    FrontierOutcome out;
    if (g.m() == 0) {  // single vertex: empty flow realizes only the zero boundary
        out.exists = beta.empty() || beta[0] == 0;
        return out;
    }
    std::vector<std::vector<int>> tab_add(S), tab_sub(S);
    for (int x = 1; x < S; ++x) {
        tab_add[x].resize(S);
        tab_sub[x].resize(S);
        for (int d = 0; d < S; ++d) {
            tab_add[x][d] = group.add_index(d, x);
            tab_sub[x][d] = group.sub_index(d, x);
        }
    }
    std::vector<int> nz_values;  // nonzero element indices in enumeration order
    for (const auto& el : group.enumerate_elements(true))
        nz_values.push_back(group.element_index(el));

    std::vector<int> remaining = g.degrees();
    std::vector<int> slots;  // slot j -> vertex
    BitVec cur(1);
    cur.set(0);
    std::vector<FrontierStep> trace;
    std::uint64_t held_bytes = 0;
    auto charge = [&](std::uint64_t more) {
        held_bytes += more;
        if (held_bytes + 4096 > policy.memory_budget_bytes)
            throw ResourceLimitError("frontier DP: memory budget exceeded",
                                     held_bytes + 4096);
    };

    for (int e : order) {
        policy.deadline.check("frontier DP");
        auto [t, h] = g.edges[e];
        FrontierStep rec;
        rec.edge = e;
        for (int v : {t, h}) {
            if (std::find(slots.begin(), slots.end(), v) == slots.end()) {
                rec.inserted_slots.push_back(static_cast<int>(slots.size()));
                slots.push_back(v);
                charge(cur.size() * (S - 1) / 8 + 8);
                cur.grow(cur.size() * S);  // new most-significant digit, value 0
            }
        }
        out.width = std::max(out.width, static_cast<int>(slots.size()));
        auto pows = digit_pows(S, static_cast<int>(slots.size()));
        rec.slot_u = static_cast<int>(std::find(slots.begin(), slots.end(), t) -
                                      slots.begin());
        rec.slot_v = static_cast<int>(std::find(slots.begin(), slots.end(), h) -
                                      slots.begin());
        if (want_witness) {
            charge(cur.words() * 8);
            rec.before = cur;
        }

        BitVec nxt(cur.size()), tmp(cur.size());
        for (int x = 1; x < S; ++x) {
            apply_digit_perm(cur, tmp, pows[rec.slot_u], tab_add[x], true,
                             policy.workers);
            apply_digit_perm(tmp, nxt, pows[rec.slot_v], tab_sub[x], false,
                             policy.workers);
        }
        cur = std::move(nxt);

        for (int v : {t, h}) --remaining[v];
        for (int v : {t, h}) {
            if (remaining[v] != 0) continue;
            int j = static_cast<int>(std::find(slots.begin(), slots.end(), v) -
                                     slots.begin());
            int target = beta[v];
            std::size_t stride = digit_pows(S, j + 1)[j];
            BitVec small(cur.size() / S);
            std::size_t blocks = cur.size() / (stride * S);
            for (std::size_t b = 0; b < blocks; ++b)
                or_bit_range(small, b * stride, cur,
                             b * stride * S + static_cast<std::size_t>(target) * stride,
                             stride);
            cur = std::move(small);
            slots.erase(slots.begin() + j);
            rec.drops.push_back({j, target});
        }
        if (want_witness) trace.push_back(std::move(rec));
        if (!cur.any()) return out;  // exists = false
    }
    out.exists = cur.get(0);
    if (!out.exists || !want_witness) return out;

    // backward witness reconstruction over the stored per-step sets
    out.values.assign(g.m(), -1);
    std::size_t idx = 0;
    for (int step = static_cast<int>(trace.size()) - 1; step >= 0; --step) {
        const FrontierStep& rec = trace[step];
        // re-insert dropped digits with their forced values (reverse order)
        int ndigits = 0;  // digits in the layout during the update
        {
            // count: layout size = before.size() as a power of S
            std::size_t sz = rec.before.size();
            while (sz > 1) {
                sz /= S;
                ++ndigits;
            }
        }
        auto pows = digit_pows(S, ndigits + 1);
        for (auto it = rec.drops.rbegin(); it != rec.drops.rend(); ++it) {
            auto [pos, val] = *it;
            std::size_t low = idx % pows[pos];
            std::size_t high = idx / pows[pos];
            idx = low + static_cast<std::size_t>(val) * pows[pos] + high * pows[pos + 1];
        }
        auto digit_shift = [&](std::size_t i, int pos, int from, int to) {
            return i - static_cast<std::size_t>(from) * pows[pos] +
                   static_cast<std::size_t>(to) * pows[pos];
        };
        bool found = false;
        for (int x : nz_values) {
            // undo "add x at u, subtract x at v"
            int du = static_cast<int>((idx / pows[rec.slot_u]) % S);
            std::size_t cand = digit_shift(idx, rec.slot_u, du, tab_sub[x][du]);
            int dv = static_cast<int>((cand / pows[rec.slot_v]) % S);
            cand = digit_shift(cand, rec.slot_v, dv, tab_add[x][dv]);
            if (!rec.before.get(cand)) continue;
            out.values[rec.edge] = x;
            // strip inserted digits (their value is zero in any before-state)
            for (auto it = rec.inserted_slots.rbegin(); it != rec.inserted_slots.rend();
                 ++it) {
                std::size_t low = cand % pows[*it];
                std::size_t high = cand / pows[*it + 1];
                cand = low + high * pows[*it];
            }
            idx = cand;
            found = true;
            break;
        }
        if (!found)
            throw std::logic_error("frontier witness reconstruction lost the trail");
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// spanning-tree enumeration (the slow, independent oracle)

namespace detail {

// Enumerates nonzero values on the non-tree edges in lexicographic order
// (value order = element enumeration order); tree edge values are forced
// leaf-inward. Returns the first hit, i.e. the lexicographically least
// assignment.
inline std::optional<std::vector<int>> tree_component(const Multigraph& g,
                                                      const AbelianGroup& group,
                                                      const std::vector<int>& beta,
                                                      const ExecPolicy& policy) {
    const int S = group.order();
    if (g.m() == 0)
        return beta.empty() || beta[0] == 0
                   ? std::make_optional(std::vector<int>{})
                   : std::nullopt;
    // BFS spanning tree from vertex 0, edges scanned in index order
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (other, edge)
    for (int e = 0; e < g.m(); ++e) {
        adj[g.edges[e].first].push_back({g.edges[e].second, e});
        adj[g.edges[e].second].push_back({g.edges[e].first, e});
    }
    std::vector<int> parent_edge(g.n, -1), disc_order;
    std::vector<bool> seen(g.n, false);
    std::deque<int> q{0};
    seen[0] = true;
    disc_order.push_back(0);
    std::vector<bool> is_tree(g.m(), false);
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (auto [w, e] : adj[u])
            if (!seen[w]) {
                seen[w] = true;
                parent_edge[w] = e;
                is_tree[e] = true;
                disc_order.push_back(w);
                q.push_back(w);
            }
    }
    std::vector<int> nontree;
    for (int e = 0; e < g.m(); ++e)
        if (!is_tree[e]) nontree.push_back(e);

    std::vector<int> nz;
    for (const auto& el : group.enumerate_elements(true))
        nz.push_back(group.element_index(el));

    std::vector<int> choice(nontree.size(), 0);
    std::vector<int> values(g.m(), 0), sums(g.n, 0);
    while (true) {
        policy.deadline.check("tree search");
        std::fill(sums.begin(), sums.end(), 0);
        for (std::size_t i = 0; i < nontree.size(); ++i) {
            int e = nontree[i], x = nz[choice[i]];
            values[e] = x;
            sums[g.edges[e].first] = group.add_index(sums[g.edges[e].first], x);
            sums[g.edges[e].second] = group.sub_index(sums[g.edges[e].second], x);
        }
        bool ok = true;
        for (int i = static_cast<int>(disc_order.size()) - 1; i >= 1 && ok; --i) {
            int v = disc_order[i], e = parent_edge[v];
            int need = group.sub_index(beta[v], sums[v]);
            int x = g.edges[e].first == v ? need : group.negate_index(need);
            if (x == 0) {
                ok = false;
                break;
            }
            values[e] = x;
            sums[g.edges[e].first] = group.add_index(sums[g.edges[e].first], x);
            sums[g.edges[e].second] = group.sub_index(sums[g.edges[e].second], x);
        }
        if (ok) return values;
        // odometer (last non-tree edge spins fastest)
        int i = static_cast<int>(choice.size()) - 1;
        while (i >= 0 && ++choice[i] == static_cast<int>(nz.size())) choice[i--] = 0;
        if (i < 0) return std::nullopt;
    }
}

}  // namespace detail

enum class FlowAlgo { Tree, Frontier };

inline FlowAlgo parse_flow_algo(const std::string& s) {
    if (s == "tree") return FlowAlgo::Tree;
    if (s == "frontier") return FlowAlgo::Frontier;
    throw UsageError("unknown flow algorithm '" + s + "' (want tree|frontier)");
}

// Nowhere-zero assignment with ∂φ = beta, if one exists. Disconnected
// graphs are decided per component with beta restricted per component; a
// restriction that is not zero-sum means no flow.
inline std::optional<FlowAssignment> flow_with_boundary(
    const Multigraph& g, const AbelianGroup& group, const Boundary& beta,
    FlowAlgo algo = FlowAlgo::Frontier, const ExecPolicy& policy = {}) {
    if (static_cast<int>(beta.values.size()) != g.n)
        throw UsageError("boundary arity mismatch");
    for (const auto& v : beta.values) group.require_valid(v);
    if (!is_zero_sum(group, beta)) throw UsageError("boundary not zero-sum");

    auto comp = g.components();
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> result(g.m(), -1);
    auto beta_idx = detail::boundary_to_indices(group, beta);

    for (int c = 0; c < ncomp; ++c) {
        // component restriction, local indexing
        std::vector<int> verts, vmap(g.n, -1);
        for (int v = 0; v < g.n; ++v)
            if (comp[v] == c) {
                vmap[v] = static_cast<int>(verts.size());
                verts.push_back(v);
            }
        Multigraph sub;
        sub.n = static_cast<int>(verts.size());
        std::vector<int> orig_edge;
        for (int e = 0; e < g.m(); ++e)
            if (comp[g.edges[e].first] == c) {
                sub.edges.push_back({vmap[g.edges[e].first], vmap[g.edges[e].second]});
                orig_edge.push_back(e);
            }
        std::vector<int> sub_beta(sub.n);
        int sum = 0;
        for (int v = 0; v < sub.n; ++v) {
            sub_beta[v] = beta_idx[verts[v]];
            sum = group.add_index(sum, sub_beta[v]);
        }
        if (sum != 0) return std::nullopt;  // restriction not zero-sum

        if (algo == FlowAlgo::Tree) {
            auto res = detail::tree_component(sub, group, sub_beta, policy);
            if (!res) return std::nullopt;
            for (std::size_t i = 0; i < orig_edge.size(); ++i)
                result[orig_edge[i]] = (*res)[i];
        } else {
            auto order = edge_order_heuristic(sub);
            auto res = detail::frontier_component(sub, group, sub_beta, order.order,
                                                  policy, /*want_witness=*/true);
            if (!res.exists) return std::nullopt;
            for (std::size_t i = 0; i < orig_edge.size(); ++i)
                result[orig_edge[i]] = res.values[i];
        }
    }
    FlowAssignment out;
    out.values.reserve(g.m());
    for (int e = 0; e < g.m(); ++e) out.values.push_back(group.index_element(result[e]));
    return out;
}

// Existence-only frontier query (no witness buffers); used by the negative
// certificates where only absence matters.
inline bool boundary_realizable(const Multigraph& g, const AbelianGroup& group,
                                const Boundary& beta, const ExecPolicy& policy = {},
                                int* width_out = nullptr) {
    if (static_cast<int>(beta.values.size()) != g.n)
        throw UsageError("boundary arity mismatch");
    if (!is_zero_sum(group, beta)) throw UsageError("boundary not zero-sum");
    auto comp = g.components();
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    auto beta_idx = detail::boundary_to_indices(group, beta);
    int width = 0;
    bool ok = true;
    for (int c = 0; c < ncomp && ok; ++c) {
        std::vector<int> verts, vmap(g.n, -1);
        for (int v = 0; v < g.n; ++v)
            if (comp[v] == c) {
                vmap[v] = static_cast<int>(verts.size());
                verts.push_back(v);
            }
        Multigraph sub;
        sub.n = static_cast<int>(verts.size());
        for (int e = 0; e < g.m(); ++e)
            if (comp[g.edges[e].first] == c)
                sub.edges.push_back({vmap[g.edges[e].first], vmap[g.edges[e].second]});
        std::vector<int> sub_beta(sub.n);
        int sum = 0;
        for (int v = 0; v < sub.n; ++v) {
            sub_beta[v] = beta_idx[verts[v]];
            sum = group.add_index(sum, sub_beta[v]);
        }
        if (sum != 0) return false;
        auto order = edge_order_heuristic(sub);
        width = std::max(width, order.width);
        auto res = detail::frontier_component(sub, group, sub_beta, order.order, policy,
                                              /*want_witness=*/false);
        ok = res.exists;
    }
    if (width_out) *width_out = width;
    return ok;
}

inline bool has_nowhere_zero_flow(const Multigraph& g, const AbelianGroup& group,
                                  const ExecPolicy& policy = {}) {
    return boundary_realizable(g, group, zero_boundary(g, group), policy);
}

// Tutte: a k-NZF exists iff an S-NZF exists for any (every) |S| = k.
inline bool has_k_nzf(const Multigraph& g, int k, const ExecPolicy& policy = {}) {
    if (k < 2) throw UsageError("has_k_nzf: k must be >= 2");
    return has_nowhere_zero_flow(g, AbelianGroup({k}), policy);
}

}  // namespace groupconn
