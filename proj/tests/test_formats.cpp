#include <catch2/catch_amalgamated.hpp>

#include "groupconn/shipped_certs.hpp"
#include "groupconn/verify.hpp"

using namespace groupconn;

TEST_CASE("graph file errors carry line context") {
    try {
        parse_graph("vertices 3\nedge 0 3\n");
        FAIL("expected parse error");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_graph("vertices 2\nvertices 2\n"), UsageError);
    CHECK_THROWS_AS(parse_graph("label 0 a\nvertices 2\n"), UsageError);
    // comments and blank lines are fine anywhere
    auto g = parse_graph("# head\n\nvertices 2\n# mid\nedge 0 1 # tail\n");
    CHECK(g.m() == 1);
}

TEST_CASE("run config validation and env parsing") {
    RunConfig c;
    c.memory_budget_bytes = 1 << 20;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = RunConfig{};
    c.worker_count = 0;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = RunConfig{};
    c.output_format = "yaml";
    CHECK_THROWS_AS(c.validate(), UsageError);
    RunConfig ok;
    ok.validate();
    CHECK(ok.worker_count >= 1);
}

TEST_CASE("certificate serialization uses stable field order") {
    auto z4 = parse_group_spec("Z4");
    auto cert = certify::rule_cycle(4, z4);
    std::string dumped = cert.to_json().dump();
    CHECK(dumped.find("\"rule\"") < dumped.find("\"conclusion\""));
    CHECK(dumped.find("\"conclusion\"") < dumped.find("\"data\""));
    CHECK(dumped.find("\"data\"") < dumped.find("\"premises\""));
    CHECK(dumped.find("\"graph\"") < dumped.find("\"group\""));
}

TEST_CASE("quick pipeline sanity: cycle law and lemma items") {
    // a fast subset of the full verify-paper pipeline (items 2, 6, 7)
    RunConfig cfg;
    certify::CertifyCache cache;
    auto rep = certify::verify_k4_lemma();
    CHECK(rep.property_holds);
    for (int n = 2; n <= 5; ++n) {
        auto z6 = parse_group_spec("Z6");
        CHECK(is_group_connected(catalog::cycle(n), z6).connected == (6 >= n + 1));
    }
}

TEST_CASE("group spec canonical rendering") {
    CHECK(parse_group_spec("z4").to_string() == "Z4");
    CHECK(parse_group_spec("Z2XZ2").to_string() == "Z2xZ2");
}
