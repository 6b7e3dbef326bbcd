#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "groupconn/catalog.hpp"
#include "groupconn/certify.hpp"
#include "groupconn/connectivity.hpp"

using namespace groupconn;

TEST_CASE("every catalog entry loads with its structural profile") {
    for (const auto& name : catalog::catalog_names()) {
        auto e = catalog::catalog_get(name);
        CHECK(e.graph.n > 0);
        CHECK(e.graph.connected());
        CHECK(e.name == name);
    }
    CHECK_THROWS_AS(catalog::catalog_get("nope"), UsageError);
}

TEST_CASE("gadget transcription profile") {
    for (auto g : {catalog::h1(), catalog::h2()}) {
        CHECK(g.n == 15);
        CHECK(g.m() == 21);
        auto deg = g.degrees();
        std::vector<int> twos;
        for (int v = 0; v < g.n; ++v)
            if (deg[v] == 2) twos.push_back(v);
        CHECK(twos == std::vector<int>{0, 1, 13});  // the marked x, y, z
        CHECK(edge_connectivity(g) == 2);
    }
    CHECK(catalog::h1().edges != catalog::h2().edges);
}

TEST_CASE("composed gadget graphs") {
    auto h11 = catalog::catalog_get("H1_1");
    CHECK(h11.graph.n == 17);
    CHECK(h11.graph.m() == 24);
    CHECK(h11.graph.degree(15) == 2);  // z

    auto h12 = catalog::catalog_get("H1_2");
    CHECK(h12.graph.n == 30);
    CHECK(h12.graph.m() == 44);
    CHECK(h12.marked.at("z") == 15);
    CHECK(h12.marked.at("z'") == 28);
    for (int which : {0, 1}) {
        auto copy =
            extract_subgraph(h12.graph, catalog::h_i_2_gadget_edges(which)).graph;
        CHECK(copy.n == 15);
        CHECK(copy.m() == 21);
    }

    for (int i : {1, 2}) {
        auto h3 = catalog::h_i_3(i);
        CHECK(h3.n == 88);
        CHECK(h3.m() == 133);
        CHECK(edge_connectivity(h3) == 3);
        // copy spans: each extraction looks like an H_i^2
        for (int c = 0; c < 3; ++c) {
            auto sub = extract_subgraph(h3, catalog::h_i_3_copy_edges(c)).graph;
            CHECK(sub.n == 30);
            CHECK(sub.m() == 44);
        }
    }
}

TEST_CASE("cubic constructions") {
    auto k4c = catalog::cubic_from_k4();
    CHECK(k4c.graph.n == 60);
    CHECK(k4c.graph.m() == 90);
    CHECK(k4c.graph.is_cubic());
    CHECK(edge_connectivity(k4c.graph) == 3);
    REQUIRE(k4c.copies.size() == 4);
    for (int k = 0; k < 4; ++k)
        for (int v = 0; v < 15; ++v) CHECK(k4c.copies[k][v] == 15 * k + v);

    auto pc = catalog::cubic_from_prism();
    CHECK(pc.graph.n == 90);
    CHECK(pc.graph.m() == 135);
    CHECK(pc.graph.is_cubic());
    CHECK(edge_connectivity(pc.graph) == 3);
    REQUIRE(pc.copies.size() == 6);
}

TEST_CASE("prism color classes form the unique 1-factorization") {
    auto classes = catalog::prism_color_classes();
    auto p = catalog::prism();
    std::set<int> all;
    for (const auto& cls : classes) {
        CHECK(cls.size() == 3);
        std::set<int> verts;
        for (int e : cls) {
            verts.insert(p.edges[e].first);
            verts.insert(p.edges[e].second);
            all.insert(e);
        }
        CHECK(verts.size() == 6);  // perfect matching
    }
    CHECK(all.size() == 9);
    auto rep = certify::verify_prism_coloring();
    CHECK(rep.classes[0] == classes[0]);
    CHECK(rep.classes[1] == classes[1]);
    CHECK(rep.classes[2] == classes[2]);
}

TEST_CASE("prism substitution realizes all six permutations") {
    auto pc = catalog::cubic_from_prism();
    auto classes = catalog::prism_color_classes();
    std::vector<int> edge_color(9, -1);
    for (int c = 0; c < 3; ++c)
        for (int e : classes[c]) edge_color[e] = c;
    std::set<std::array<int, 3>> triples;
    for (const auto& copy : pc.copies) {
        std::array<int, 3> triple{};
        int slot = 0;
        for (int marked : {0, 1, 13}) {
            int gv = copy[marked];
            for (int e = 0; e < 9; ++e)
                if (pc.graph.edges[e].first == gv || pc.graph.edges[e].second == gv)
                    triple[slot] = edge_color[e];
            ++slot;
        }
        triples.insert(triple);
    }
    CHECK(triples.size() == 6);
}

TEST_CASE("boundary transfer builders") {
    auto z4 = parse_group_spec("Z4");
    auto z22 = parse_group_spec("Z2xZ2");

    auto k4c = catalog::cubic_from_k4();
    Boundary beta1 = failed_boundaries(catalog::h1(), z4, 1).at(0);
    auto beta = catalog::build_k4_boundary(z4, beta1, k4c);
    CHECK(is_zero_sum(z4, beta));
    CHECK(!boundary_realizable(k4c.graph, z4, beta));

    // a non-failed beta1 still type-checks, but the negative rule rejects it
    Boundary achievable = zero_boundary(catalog::h1(), z4);
    auto decoy = catalog::build_k4_boundary(z4, achievable, k4c);
    CHECK(is_zero_sum(z4, decoy));
    CHECK_THROWS_AS(certify::rule_single_boundary_negative(
                        certify::recipe_catalog("cubicZ22notZ4"), z4, decoy),
                    UsageError);

    auto pc = catalog::cubic_from_prism();
    Boundary beta1p = failed_boundaries(catalog::h2(), z22, 1).at(0);
    auto betap = catalog::build_prism_boundary(z22, beta1p, pc);
    CHECK(is_zero_sum(z22, betap));
    CHECK(!boundary_realizable(pc.graph, z22, betap));

    CHECK_THROWS_AS(
        catalog::build_k4_boundary(z22, beta1, k4c), UsageError);  // wrong group
    Boundary bad{std::vector<GroupElement>(15, z4.index_element(1))};
    CHECK_THROWS_AS(catalog::build_k4_boundary(z4, bad, k4c), UsageError);
}

TEST_CASE("catalog emission is byte-stable") {
    for (const auto& name : catalog::catalog_names()) {
        auto a = emit_graph(catalog::catalog_get(name).graph);
        auto b = emit_graph(catalog::catalog_get(name).graph);
        CHECK(a == b);
        CHECK(parse_graph(a).equal_structure(catalog::catalog_get(name).graph));
    }
}
