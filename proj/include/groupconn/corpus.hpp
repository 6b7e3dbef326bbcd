#pragma once

// Exhaustive enumeration of small connected loopless multigraphs up to
// isomorphism (canonical-form dedup over all vertex permutations). Feeds
// the lemma-replication and oracle-equivalence suites.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "groupconn/graph.hpp"

namespace groupconn {
namespace corpus {

namespace detail {

inline std::string canonical_key(const Multigraph& g) {
    std::vector<int> perm(g.n);
    for (int i = 0; i < g.n; ++i) perm[i] = i;
    std::string best;
    do {
        std::vector<std::pair<int, int>> relabeled;
        relabeled.reserve(g.edges.size());
        for (auto [t, h] : g.edges) {
            int a = perm[t], b = perm[h];
            relabeled.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(relabeled.begin(), relabeled.end());
        std::string key;
        for (auto [a, b] : relabeled)
            key += static_cast<char>('0' + a), key += static_cast<char>('0' + b);
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace detail

// All isomorphism classes of connected loopless multigraphs with exactly n
// vertices and at most max_m edges (parallel edges allowed).
inline std::vector<Multigraph> connected_classes_exact_n(int n, int max_m) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::vector<Multigraph> out;
    std::set<std::string> seen;
    std::vector<int> mult(pairs.size(), 0);

    std::function<void(std::size_t, int)> rec = [&](std::size_t p, int budget) {
        if (p == pairs.size()) {
            Multigraph g;
            g.n = n;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                for (int c = 0; c < mult[i]; ++c) g.edges.push_back(pairs[i]);
            if (!g.connected()) return;
            if (seen.insert(detail::canonical_key(g)).second) out.push_back(std::move(g));
            return;
        }
        for (int c = 0; c <= budget; ++c) {
            mult[p] = c;
            rec(p + 1, budget - c);
        }
        mult[p] = 0;
    };
    rec(0, max_m);
    return out;
}

// Classes over all vertex counts 1..max_n.
inline std::vector<Multigraph> connected_classes(int max_n, int max_m) {
    std::vector<Multigraph> out;
    for (int n = 1; n <= max_n; ++n) {
        auto part = connected_classes_exact_n(n, max_m);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace corpus
}  // namespace groupconn
