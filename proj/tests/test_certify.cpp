#include <catch2/catch_amalgamated.hpp>

#include "groupconn/corpus.hpp"
#include "groupconn/shipped_certs.hpp"

using namespace groupconn;
using certify::CertificateTree;

TEST_CASE("cycle rule") {
    auto z4 = parse_group_spec("Z4");
    auto z22 = parse_group_spec("Z2xZ2");
    CHECK(!certify::rule_cycle(4, z4).connected);
    CHECK(certify::rule_cycle(2, z22).connected);
    CHECK(certify::rule_cycle(3, z4).connected);
    CHECK_THROWS_AS(certify::rule_cycle(1, z4), UsageError);
}

TEST_CASE("two-sum rule side conditions") {
    auto z4 = parse_group_spec("Z4");
    auto z2 = parse_group_spec("Z2");
    certify::CertifyCache cache;

    // rejected when a premise concludes connected
    auto c2_connected = certify::rule_cycle(2, z4);  // connected: 4 >= 3
    auto c4_failed = certify::rule_cycle(4, z4);
    auto conclusion = certify::recipe_two_sum(certify::recipe_cycle(4), 0,
                                              certify::recipe_cycle(2), 0, 1);
    CHECK_THROWS_AS(certify::rule_two_sum_negative(conclusion, 0, 0, 1, z4, c4_failed,
                                                   c2_connected),
                    UsageError);

    // |S| >= 3 required
    auto c4z2 = certify::rule_cycle(4, z2);
    auto c3z2 = certify::rule_cycle(3, z2);
    auto conc2 = certify::recipe_two_sum(certify::recipe_cycle(4), 0,
                                         certify::recipe_cycle(3), 0, 1);
    CHECK_THROWS_AS(certify::rule_two_sum_negative(conc2, 0, 0, 1, z2, c4z2, c3z2),
                    UsageError);

    // a hand-forged Z2 node must fail replay
    CertificateTree forged;
    forged.rule = certify::Rule::TwoSumNegative;
    forged.graph = conc2;
    forged.group = z2;
    forged.connected = false;
    forged.data = {{"edge", 0}, {"u2", 0}, {"v2", 1}};
    forged.premises = {c4z2, c3z2};
    auto res = certify::check_certificate(forged);
    CHECK(!res.ok);
}

TEST_CASE("single boundary rule rejects realizable boundaries") {
    auto z4 = parse_group_spec("Z4");
    auto zero = zero_boundary(catalog::cycle(4), z4);
    CHECK_THROWS_AS(
        certify::rule_single_boundary_negative(certify::recipe_cycle(4), z4, zero),
        UsageError);
}

TEST_CASE("shipped certificates replay") {
    ExecPolicy pol;
    certify::CertifyCache cache;
    struct Want {
        const char* name;
        const char* group;
        bool connected;
    };
    for (const auto& w : std::initializer_list<Want>{
             {"H1_2", "Z2xZ2", true},
             {"H1_2", "Z4", false},
             {"H2_2", "Z4", true},
             {"H2_2", "Z2xZ2", false},
             {"K4", "Z2xZ2", true},
             {"prism", "Z4", true},
             {"H1_1", "Z2xZ2", true},
             {"H2_1", "Z2xZ2", false}}) {
        auto group = parse_group_spec(w.group);
        auto cert = certify::build_certificate(w.name, group, pol, &cache);
        CHECK(cert.connected == w.connected);
        auto res = certify::check_certificate(cert, pol, &cache);
        CHECK(res.ok);
    }
}

TEST_CASE("certificate JSON round trip and tamper detection") {
    ExecPolicy pol;
    certify::CertifyCache cache;
    auto z22 = parse_group_spec("Z2xZ2");
    auto cert = certify::build_certificate("H1_2", z22, pol, &cache);

    auto dumped = cert.to_json();
    CHECK(dumped.dump() == cert.to_json().dump());  // stable serialization
    auto reloaded = CertificateTree::from_json(dumped);
    CHECK(certify::check_certificate(reloaded, pol, &cache).ok);

    // tamper with a premise verdict
    auto bad = dumped;
    bad["premises"][0]["conclusion"]["connected"] = false;
    auto res = certify::check_certificate(CertificateTree::from_json(bad), pol, &cache);
    CHECK(!res.ok);
    CHECK(!res.fail_path.empty());

    // tamper with the root conclusion
    auto bad2 = dumped;
    bad2["conclusion"]["connected"] = false;
    CHECK(!certify::check_certificate(CertificateTree::from_json(bad2), pol, &cache).ok);
}

TEST_CASE("K4 lemma report") {
    auto rep = certify::verify_k4_lemma();
    CHECK(rep.property_holds);
    CHECK(rep.flows_checked == 12);
    CHECK(rep.contains_all_ones);
}

TEST_CASE("prism coloring report") {
    auto rep = certify::verify_prism_coloring();
    CHECK(rep.unique_partition);
    CHECK(rep.coloring_count == 6);
    // the same routine on K4: also uniquely 3-edge-colorable
    auto k4rep = certify::edge_coloring_report(catalog::k4());
    CHECK(k4rep.unique_partition);
    CHECK(k4rep.coloring_count == 6);
    // expanding a K4 vertex yields a prism: same coloring profile
    for (int v = 0; v < 4; ++v) {
        auto ex = certify::edge_coloring_report(triangle_expand(catalog::k4(), v));
        CHECK(ex.unique_partition);
        CHECK(ex.coloring_count == 6);
    }
}

TEST_CASE("collapsibility") {
    CHECK(certify::is_collapsible(catalog::cycle(3)));
    CHECK(!certify::is_collapsible(catalog::cycle(4)));
    CHECK(certify::is_collapsible(catalog::k4()));
    Multigraph big;
    big.n = 13;
    for (int i = 0; i < 13; ++i)
        for (int j = 0; j < 2; ++j) big.edges.push_back({i, (i + 1) % 13});
    CHECK_THROWS_AS(certify::is_collapsible(big), UsageError);  // m = 26 > 24
}

TEST_CASE("collapsible graphs in the small corpus are Z4- and Z2xZ2-connected") {
    auto z4 = parse_group_spec("Z4");
    auto z22 = parse_group_spec("Z2xZ2");
    int found = 0;
    for (const auto& g : corpus::connected_classes(4, 7)) {
        if (!certify::is_collapsible(g)) continue;
        ++found;
        CHECK(is_group_connected(g, z4).connected);
        CHECK(is_group_connected(g, z22).connected);
    }
    CHECK(found > 0);
}

TEST_CASE("triangle expansion preserves verdicts for groups of order >= 4") {
    for (const char* gs : {"Z4", "Z2xZ2", "Z5"}) {
        auto group = parse_group_spec(gs);
        for (auto base : {catalog::k4(), catalog::prism()}) {
            bool before = is_group_connected(base, group).connected;
            for (int v = 0; v < base.n; ++v) {
                auto ex = triangle_expand(base, v);
                CHECK(is_group_connected(ex, group).connected == before);
            }
        }
    }
}

TEST_CASE("on cubic graphs Z2xZ2-NZF existence equals 3-edge-colorability") {
    std::vector<Multigraph> cubics = {catalog::k4(), catalog::prism(),
                                      triangle_expand(catalog::k4(), 2)};
    // Petersen graph: cubic, not 3-edge-colorable
    Multigraph petersen;
    petersen.n = 10;
    for (int i = 0; i < 5; ++i) {
        petersen.edges.push_back({i, (i + 1) % 5});
        petersen.edges.push_back({i, i + 5});
        petersen.edges.push_back({i + 5, 5 + (i + 2) % 5});
    }
    REQUIRE(petersen.is_cubic());
    cubics.push_back(petersen);

    auto z22 = parse_group_spec("Z2xZ2");
    for (const auto& g : cubics) {
        bool nzf = has_nowhere_zero_flow(g, z22);
        bool colorable = !proper_three_edge_colorings(g).empty();
        CHECK(nzf == colorable);
    }
}

TEST_CASE("two-sum and contraction lemma replication (small sample)") {
    auto z4 = parse_group_spec("Z4");
    auto classes = corpus::connected_classes(4, 5);
    std::vector<const Multigraph*> bad;
    for (const auto& g : classes)
        if (g.n >= 2 && g.m() >= 1 && !is_group_connected(g, z4).connected)
            bad.push_back(&g);
    REQUIRE(bad.size() >= 5);
    int pairs = 0;
    for (std::size_t i = 0; i < bad.size() && pairs < 40; ++i)
        for (std::size_t j = 0; j < bad.size() && pairs < 40; ++j, ++pairs) {
            auto sum = two_sum(*bad[i], 0, *bad[j], 0, 1).graph;
            CHECK(!is_group_connected(sum, z4).connected);
        }

    int instances = 0;
    for (const auto& g : classes) {
        if (g.m() < 2 || instances >= 40) continue;
        bool whole = is_group_connected(g, z4).connected;
        for (std::uint32_t mask = 1; mask < (1u << g.m()) && instances < 40; ++mask) {
            std::vector<int> h_edges;
            for (int e = 0; e < g.m(); ++e)
                if (mask >> e & 1) h_edges.push_back(e);
            if (h_edges.size() < 2) continue;
            auto sub = extract_subgraph(g, h_edges).graph;
            if (!sub.connected() || !is_group_connected(sub, z4).connected) continue;
            ++instances;
            CHECK(is_group_connected(contract(g, h_edges).graph, z4).connected == whole);
        }
    }
    CHECK(instances >= 10);
}
