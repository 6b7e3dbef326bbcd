#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "groupconn/catalog.hpp"
#include "groupconn/connectivity.hpp"
#include "groupconn/corpus.hpp"
#include "groupconn/verify.hpp"

using namespace groupconn;

TEST_CASE("cycle law") {
    for (const char* gs : {"Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z2xZ3"}) {
        auto group = parse_group_spec(gs);
        for (int n = 2; n <= 5; ++n) {
            auto v = is_group_connected(catalog::cycle(n), group);
            CHECK(v.connected == (group.order() >= n + 1));
        }
    }
}

TEST_CASE("gadget verdicts with frozen regression values") {
    auto z4 = parse_group_spec("Z4");
    auto z22 = parse_group_spec("Z2xZ2");

    auto h1 = catalog::h1();
    auto v = is_group_connected(h1, z22);
    CHECK(v.connected);
    CHECK(*v.failed_count == 0);

    v = is_group_connected(h1, z4);
    CHECK(!v.connected);
    CHECK(*v.failed_count == verify::kH1Z4FailedCount);
    REQUIRE(v.witness.has_value());
    CHECK(boundary_index(h1, z4, *v.witness) == verify::kH1Z4FirstFailedIndex);
    CHECK(!flow_with_boundary(h1, z4, *v.witness).has_value());

    auto h2 = catalog::h2();
    CHECK(is_group_connected(h2, z4).connected);
    v = is_group_connected(h2, z22);
    CHECK(!v.connected);
    CHECK(*v.failed_count == verify::kH2Z22FailedCount);
    REQUIRE(v.witness.has_value());
    CHECK(boundary_index(h2, z22, *v.witness) == verify::kH2Z22FirstFailedIndex);
}

TEST_CASE("failed boundary enumeration") {
    auto z4 = parse_group_spec("Z4");
    auto z3 = parse_group_spec("Z3");
    auto c4 = catalog::cycle(4);

    auto one = failed_boundaries(c4, z4, 1);
    REQUIRE(one.size() == 1);
    CHECK(boundary_index(c4, z4, one[0]) == 21);  // boundary (1,1,1,1)
    for (const auto& val : one[0].values) CHECK(val == z4.index_element(1));

    CHECK(failed_boundaries(catalog::cycle(2), z3, 10).empty());

    auto some = failed_boundaries(c4, z4, 10);
    CHECK(some.size() == 6);  // frozen: C4 misses six boundaries over Z4
    for (const auto& b : some) CHECK(!flow_with_boundary(c4, z4, b).has_value());
}

TEST_CASE("verdicts are invariant under vertex renumbering") {
    std::mt19937 rng(555);
    auto classes = corpus::connected_classes(5, 6);
    auto z4 = parse_group_spec("Z4");
    int done = 0;
    for (const auto& g : classes) {
        if (g.n < 3 || done >= 25) continue;
        ++done;
        bool base = is_group_connected(g, z4).connected;
        std::vector<int> perm(g.n);
        for (int i = 0; i < g.n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        Multigraph relabeled = g;
        for (auto& [t, h] : relabeled.edges) {
            t = perm[t];
            h = perm[h];
        }
        CHECK(is_group_connected(relabeled, z4).connected == base);
    }
}

TEST_CASE("factor order does not change verdicts") {
    auto a = parse_group_spec("Z2xZ3");
    auto b = parse_group_spec("Z3xZ2");
    for (const auto& g : corpus::connected_classes(4, 5))
        CHECK(is_group_connected(g, a).connected == is_group_connected(g, b).connected);
    auto z22 = parse_group_spec("Z2xZ2");
    CHECK(is_group_connected(catalog::h1(), z22).connected);
}

TEST_CASE("disconnected graphs are never S-connected") {
    Multigraph g;
    g.n = 4;
    g.edges = {{0, 1}, {2, 3}};
    auto z4 = parse_group_spec("Z4");
    auto v = is_group_connected(g, z4);
    CHECK(!v.connected);
    REQUIRE(v.witness.has_value());
    CHECK(!flow_with_boundary(g, z4, *v.witness).has_value());
    CHECK(is_zero_sum(z4, *v.witness));
}

TEST_CASE("the single-vertex graph is S-connected for every S") {
    Multigraph k1;
    k1.n = 1;
    for (const char* gs : {"Z2", "Z3", "Z4", "Z2xZ2", "Z6"})
        CHECK(is_group_connected(k1, parse_group_spec(gs)).connected);
}

TEST_CASE("Z3-connected graphs stay connected for larger groups (spot check)") {
    auto z3 = parse_group_spec("Z3");
    std::vector<AbelianGroup> bigger = {parse_group_spec("Z4"), parse_group_spec("Z2xZ2"),
                                        parse_group_spec("Z5")};
    int z3_connected = 0;
    for (const auto& g : corpus::connected_classes(4, 6)) {
        if (!is_group_connected(g, z3).connected) continue;
        ++z3_connected;
        for (const auto& s : bigger) CHECK(is_group_connected(g, s).connected);
    }
    CHECK(z3_connected > 0);  // the corpus exercises the claim
}

TEST_CASE("per-boundary decision agrees with the dense DP") {
    auto z22 = parse_group_spec("Z2xZ2");
    for (const auto& g : corpus::connected_classes(4, 5)) {
        auto dense = is_group_connected(g, z22);
        auto slow = is_group_connected(g, z22, {}, DecisionMethod::PerBoundary);
        CHECK(dense.connected == slow.connected);
        CHECK(*dense.failed_count == *slow.failed_count);
    }
}

TEST_CASE("boundary file round trip") {
    auto g = catalog::cycle(4);
    auto z22 = parse_group_spec("Z2xZ2");
    Boundary beta = zero_boundary(g, z22);
    beta.values[1] = GroupElement{{1, 0}};
    beta.values[3] = GroupElement{{1, 0}};
    std::string text = boundary_to_text(z22, beta);
    CHECK(text == "1 1,0\n3 1,0\n");
    auto back = boundary_from_text(g, z22, text);
    CHECK(back.values == beta.values);

    CHECK_THROWS_AS(boundary_from_text(g, z22, "0 1,0\n"), UsageError);  // not zero-sum
    CHECK_THROWS_AS(boundary_from_text(g, z22, "0 1,0\n0 1,0\n"), UsageError);
    CHECK_THROWS_AS(boundary_from_text(g, z22, "9 1,0\n"), UsageError);
}

TEST_CASE("verdict report fields") {
    auto g = catalog::cycle(3);
    auto z4 = parse_group_spec("Z4");
    auto v = is_group_connected(g, z4);
    auto j = verdict_report(g, z4, v, 2, 1.5);
    CHECK(j["graph_name"] == "C3");
    CHECK(j["group"] == "Z4");
    CHECK(j["connected"] == true);
    CHECK(j["method"] == "bitset_dp");
    CHECK(j["witness"].is_null());
    CHECK(j["failed_count"] == 0);
    CHECK(j["frontier_width"] == 2);
    // stable field order
    std::string dumped = j.dump();
    CHECK(dumped.find("graph_name") < dumped.find("group"));
    CHECK(dumped.find("connected") < dumped.find("method"));
    CHECK(dumped.find("witness") < dumped.find("failed_count"));
}

TEST_CASE("whole-set DP is bit-identical for any worker count") {
    auto z4 = parse_group_spec("Z4");
    ExecPolicy p1, p2, p4;
    p1.workers = 1;
    p2.workers = 2;
    p4.workers = 4;
    auto g = catalog::h1();
    auto s1 = achievable_boundaries(g, z4, p1);
    auto s2 = achievable_boundaries(g, z4, p2);
    auto s4 = achievable_boundaries(g, z4, p4);
    CHECK(s1.bits == s2.bits);
    CHECK(s1.bits == s4.bits);
}

TEST_CASE("a tampered gadget edge list breaks the frozen verdicts") {
    auto z4 = parse_group_spec("Z4");
    auto h1 = catalog::h1();
    h1.edges[0] = {2, 8};  // reroute one edge
    auto v = is_group_connected(h1, z4);
    CHECK(v.connected);  // no longer matches the catalog claim "not Z4-connected"
}
