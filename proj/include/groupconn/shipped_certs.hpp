#pragma once

// Builders for the certificates shipped with the catalog: contraction
// chains for the positive verdicts, 2-sum chains for the composed
// negatives, and single-boundary refutations for the two cubic graphs.

#include <string>

#include "groupconn/certify.hpp"

namespace groupconn {
namespace certify {

namespace builders {

// H_i^2-shaped graph (44 edges, gadget copies at 2..22 and 23..43; after
// contracting the first copy the second slides into 2..22): contract both
// copies, the quotient is a digon.
inline CertificateTree h2pattern_positive(const json& recipe, const AbelianGroup& group,
                                          const ExecPolicy& policy, CertifyCache* cache) {
    auto span = catalog::h_i_2_gadget_edges(0);
    json q1 = recipe_contract(recipe, span);
    json q2 = recipe_contract(q1, span);
    CertificateTree inner = rule_contraction(
        q1, span, group, rule_direct(recipe_subgraph(q1, span), group, policy, cache),
        rule_cycle_on(q2, 2, group));
    return rule_contraction(
        recipe, span, group,
        rule_direct(recipe_subgraph(recipe, span), group, policy, cache),
        std::move(inner));
}

// H_i^1: contract the single gadget copy (edges 3..23); the quotient is the
// triangle left of C4.
inline CertificateTree h_i_1_positive(int i, const AbelianGroup& group,
                                      const ExecPolicy& policy, CertifyCache* cache) {
    json recipe = recipe_catalog("H" + std::to_string(i) + "_1");
    std::vector<int> span;
    for (int e = 3; e < 24; ++e) span.push_back(e);
    return rule_contraction(
        recipe, span, group,
        rule_direct(recipe_subgraph(recipe, span), group, policy, cache),
        rule_cycle_on(recipe_contract(recipe, span), 3, group));
}

namespace chain_detail {

// First edge set forming a cycle of the given length, lexicographic.
inline std::optional<std::vector<int>> find_cycle_edges(const Multigraph& g, int len) {
    std::vector<int> combo(len);
    std::function<std::optional<std::vector<int>>(int, int)> rec =
        [&](int start, int depth) -> std::optional<std::vector<int>> {
        if (depth == len) {
            auto sub = extract_subgraph(g, combo).graph;
            if (certify::detail::is_cycle_of_length(sub, len)) return combo;
            return std::nullopt;
        }
        for (int e = start; e < g.m(); ++e) {
            combo[depth] = e;
            if (auto r = rec(e + 1, depth + 1)) return r;
        }
        return std::nullopt;
    };
    return rec(0, 0);
}

}  // namespace chain_detail

// Contract 2- and 3-cycles consecutively until a singleton remains. Works
// for K4- and prism-shaped quotients over any group of order >= 4.
inline CertificateTree cycle_contraction_chain(const json& recipe,
                                               const AbelianGroup& group,
                                               const ExecPolicy& policy,
                                               CertifyCache* cache) {
    Multigraph g = evaluate_recipe(recipe);
    if (g.n == 1) return rule_direct(recipe, group, policy, cache);
    for (int len : {2, 3}) {
        if (group.order() < len + 1) continue;  // the cycle must be S-connected
        auto cyc = chain_detail::find_cycle_edges(g, len);
        if (!cyc) continue;
        CertificateTree inner =
            cycle_contraction_chain(recipe_contract(recipe, *cyc), group, policy, cache);
        return rule_contraction(recipe, *cyc, group,
                                rule_cycle_on(recipe_subgraph(recipe, *cyc), len, group),
                                std::move(inner));
    }
    throw UsageError("cycle_contraction_chain: no contractible 2- or 3-cycle found");
}

// H_i^3: contract the three H_i^2 copies (each justified by its own
// contraction chain); the final quotient is a singleton.
inline CertificateTree h_i_3_positive(int i, const AbelianGroup& group,
                                      const ExecPolicy& policy, CertifyCache* cache) {
    json r0 = recipe_catalog("H" + std::to_string(i) + "_3");
    auto span = catalog::h_i_3_copy_edges(0);  // always 1..44 after each contraction
    json r1 = recipe_contract(r0, span);
    json r2 = recipe_contract(r1, span);
    json r3 = recipe_contract(r2, span);
    CertificateTree chain = rule_direct(r3, group, policy, cache);  // singleton
    for (const json& rk : {r2, r1, r0}) {
        CertificateTree copy_cert =
            h2pattern_positive(recipe_subgraph(rk, span), group, policy, cache);
        chain = rule_contraction(rk, span, group, std::move(copy_cert), std::move(chain));
    }
    return chain;
}

// Negative chains via the 2-sum rule. The gadget itself enters as a Direct
// leaf; C4 enters through the cycle rule (|S| = 4 < 5).
inline CertificateTree h_i_1_negative(int i, const AbelianGroup& group,
                                      const ExecPolicy& policy, CertifyCache* cache) {
    std::string h = "H" + std::to_string(i);
    return rule_two_sum_negative(recipe_catalog(h + "_1"), 0, 0, 1, group,
                                 rule_cycle(4, group),
                                 rule_direct(recipe_catalog(h), group, policy, cache));
}

inline CertificateTree h_i_2_negative(int i, const AbelianGroup& group,
                                      const ExecPolicy& policy, CertifyCache* cache) {
    std::string h = "H" + std::to_string(i);
    return rule_two_sum_negative(recipe_catalog(h + "_2"), 1, 1, 0, group,
                                 h_i_1_negative(i, group, policy, cache),
                                 rule_direct(recipe_catalog(h), group, policy, cache));
}

inline CertificateTree h_i_3_negative(int i, const AbelianGroup& group,
                                      const ExecPolicy& policy, CertifyCache* cache) {
    std::string h2name = "H" + std::to_string(i) + "_2";
    CertificateTree h2neg = h_i_2_negative(i, group, policy, cache);
    json a1 = recipe_two_sum(recipe_cycle(4), 0, recipe_catalog(h2name), 15, 28);
    CertificateTree n1 = rule_two_sum_negative(a1, 0, 15, 28, group,
                                               rule_cycle(4, group), h2neg);
    json a2 = recipe_two_sum(a1, 0, recipe_catalog(h2name), 15, 28);
    CertificateTree n2 = rule_two_sum_negative(a2, 0, 15, 28, group, std::move(n1), h2neg);
    return rule_two_sum_negative(
        recipe_catalog("H" + std::to_string(i) + "_3"), 0, 15, 28, group, std::move(n2),
        std::move(h2neg));
}

// Cubic positives: contract every gadget copy (Direct leaves on the
// extracted 15-vertex copies), then run the host-shape chain.
inline CertificateTree cubic_positive(const std::string& name, const AbelianGroup& group,
                                      const ExecPolicy& policy, CertifyCache* cache) {
    bool k4_based = name == "cubicZ22notZ4";
    int ncopies = k4_based ? 4 : 6;
    int host_edges = k4_based ? 6 : 9;
    auto span = catalog::cubic_copy_edges(host_edges, 0);

    std::vector<json> levels = {recipe_catalog(name)};
    for (int k = 0; k < ncopies; ++k)
        levels.push_back(recipe_contract(levels.back(), span));

    CertificateTree chain =
        cycle_contraction_chain(levels[ncopies], group, policy, cache);
    for (int k = ncopies - 1; k >= 0; --k) {
        CertificateTree copy_cert =
            rule_direct(recipe_subgraph(levels[k], span), group, policy, cache);
        chain = rule_contraction(levels[k], span, group, std::move(copy_cert),
                                 std::move(chain));
    }
    return chain;
}

inline CertificateTree cubic_negative(const std::string& name, const AbelianGroup& group,
                                      const ExecPolicy& policy) {
    if (name == "cubicZ22notZ4") {
        auto construction = catalog::cubic_from_k4();
        Boundary beta1 = failed_boundaries(catalog::h1(), group, 1, policy).at(0);
        Boundary beta = catalog::build_k4_boundary(group, beta1, construction);
        return rule_single_boundary_negative(recipe_catalog(name), group, beta, policy);
    }
    auto construction = catalog::cubic_from_prism();
    Boundary beta1 = failed_boundaries(catalog::h2(), group, 1, policy).at(0);
    Boundary beta = catalog::build_prism_boundary(group, beta1, construction);
    return rule_single_boundary_negative(recipe_catalog(name), group, beta, policy);
}

}  // namespace builders

// Certificate for (catalog name, group); supported for Z4 and Z2xZ2 plus
// the closed-form cycle rule for any group.
inline CertificateTree build_certificate(const std::string& name,
                                         const AbelianGroup& group,
                                         const ExecPolicy& policy = {},
                                         CertifyCache* cache = nullptr) {
    using namespace builders;
    if (name.size() == 2 && name[0] == 'C' && isdigit(static_cast<unsigned char>(name[1])))
        return rule_cycle(name[1] - '0', group);

    bool z4 = group.factors() == std::vector<int>{4};
    bool z22 = group.factors() == std::vector<int>{2, 2};
    if (!z4 && !z22)
        throw UsageError("no shipped certificate for " + name + " over " +
                         group.to_string());

    if (name == "H1" || name == "H2")
        return rule_direct(recipe_catalog(name), group, policy, cache);
    if (name == "K4")
        return cycle_contraction_chain(recipe_catalog("K4"), group, policy, cache);
    if (name == "prism")
        return cycle_contraction_chain(recipe_catalog("prism"), group, policy, cache);

    bool gadget_connected_here = (name[1] == '1') == z22;  // H1* live over Z2xZ2
    if (name == "H1_1" || name == "H2_1")
        return gadget_connected_here ? h_i_1_positive(name[1] - '0', group, policy, cache)
                                     : h_i_1_negative(name[1] - '0', group, policy, cache);
    if (name == "H1_2" || name == "H2_2")
        return gadget_connected_here ? h2pattern_positive(recipe_catalog(name), group,
                                                          policy, cache)
                                     : h_i_2_negative(name[1] - '0', group, policy, cache);
    if (name == "H1_3" || name == "H2_3")
        return gadget_connected_here ? h_i_3_positive(name[1] - '0', group, policy, cache)
                                     : h_i_3_negative(name[1] - '0', group, policy, cache);
    if (name == "cubicZ22notZ4")
        return z22 ? cubic_positive(name, group, policy, cache)
                   : cubic_negative(name, group, policy);
    if (name == "cubicZ4notZ22")
        return z4 ? cubic_positive(name, group, policy, cache)
                  : cubic_negative(name, group, policy);
    throw UsageError("no shipped certificate for catalog name '" + name + "'");
}

}  // namespace certify
}  // namespace groupconn
