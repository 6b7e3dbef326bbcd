#include <catch2/catch_amalgamated.hpp>

#include "groupconn/group.hpp"

using namespace groupconn;

TEST_CASE("group spec grammar") {
    CHECK(parse_group_spec("Z4").factors() == std::vector<int>{4});
    CHECK(parse_group_spec("Z4").order() == 4);
    CHECK(parse_group_spec("Z2xZ2").factors() == std::vector<int>{2, 2});
    CHECK(parse_group_spec("Z2xZ2").order() == 4);
    CHECK(parse_group_spec("z2Xz3").factors() == std::vector<int>{2, 3});
    CHECK_THROWS_AS(parse_group_spec("Z1"), UsageError);
    CHECK_THROWS_AS(parse_group_spec("Z"), UsageError);
    CHECK_THROWS_AS(parse_group_spec("Z4x"), UsageError);
    CHECK_THROWS_AS(parse_group_spec("4"), UsageError);
    CHECK_THROWS_AS(parse_group_spec(""), UsageError);
    CHECK(parse_group_spec("Z2xZ3").to_string() == "Z2xZ3");
    // no isomorphism normalization: Z2xZ3 stays two factors
    CHECK(parse_group_spec("Z2xZ3").rank() == 2);
}

TEST_CASE("addition and negation") {
    AbelianGroup z4({4});
    CHECK(z4.add({{3}}, {{2}}) == GroupElement{{1}});
    CHECK(z4.add({{1}}, {{3}}) == GroupElement{{0}});
    CHECK(z4.negate({{1}}) == GroupElement{{3}});
    CHECK(z4.negate({{0}}) == GroupElement{{0}});

    AbelianGroup z22({2, 2});
    CHECK(z22.add({{1, 0}}, {{1, 1}}) == GroupElement{{0, 1}});
    CHECK(z22.negate({{1, 1}}) == GroupElement{{1, 1}});  // self-inverse

    CHECK_THROWS_AS(z4.add({{1, 0}}, {{1}}), UsageError);  // arity mismatch
}

TEST_CASE("element enumeration") {
    AbelianGroup z4({4});
    auto nz = z4.enumerate_elements(true);
    REQUIRE(nz.size() == 3);
    CHECK(nz[0] == GroupElement{{1}});
    CHECK(nz[1] == GroupElement{{2}});
    CHECK(nz[2] == GroupElement{{3}});

    AbelianGroup z22({2, 2});
    auto nz22 = z22.enumerate_elements(true);
    REQUIRE(nz22.size() == 3);
    CHECK(nz22[0] == GroupElement{{0, 1}});
    CHECK(nz22[1] == GroupElement{{1, 0}});
    CHECK(nz22[2] == GroupElement{{1, 1}});

    AbelianGroup z2({2});
    auto all = z2.enumerate_elements(false);
    REQUIRE(all.size() == 2);
    CHECK(all[0].is_zero());
}

TEST_CASE("element index encoding") {
    AbelianGroup z22({2, 2});
    CHECK(z22.element_index({{1, 0}}) == 1);  // first factor least significant
    CHECK(z22.element_index({{0, 1}}) == 2);
    AbelianGroup z4({4});
    CHECK(z4.element_index({{3}}) == 3);

    AbelianGroup z23({2, 3});
    for (int i = 0; i < 6; ++i) CHECK(z23.element_index(z23.index_element(i)) == i);
}

static std::vector<AbelianGroup> groups_up_to_order_12() {
    std::vector<AbelianGroup> out;
    std::function<void(std::vector<int>, int)> rec = [&](std::vector<int> factors,
                                                         int product) {
        if (!factors.empty()) out.push_back(AbelianGroup(factors));
        for (int k = 2; product * k <= 12; ++k) {
            auto f = factors;
            f.push_back(k);
            rec(f, product * k);
        }
    };
    rec({}, 1);
    return out;
}

TEST_CASE("group laws and index bijection on all groups of order <= 12") {
    for (const auto& g : groups_up_to_order_12()) {
        auto all = g.enumerate_elements(false);
        REQUIRE(static_cast<int>(all.size()) == g.order());
        // index is a bijection
        std::vector<bool> seen(g.order(), false);
        for (const auto& a : all) {
            int i = g.element_index(a);
            CHECK(!seen[i]);
            seen[i] = true;
            CHECK(g.index_element(i) == a);
        }
        // sampled laws
        for (std::size_t i = 0; i < all.size(); i += 2)
            for (std::size_t j = 0; j < all.size(); j += 3) {
                const auto &a = all[i], &b = all[j];
                CHECK(g.add(a, b) == g.add(b, a));
                CHECK(g.add(a, g.zero()) == a);
                CHECK(g.add(a, g.negate(a)).is_zero());
                for (std::size_t k = 0; k < all.size(); k += 4)
                    CHECK(g.add(g.add(a, b), all[k]) == g.add(a, g.add(b, all[k])));
            }
        auto nz = g.enumerate_elements(true);
        CHECK(static_cast<int>(nz.size()) == g.order() - 1);
        for (const auto& a : nz) CHECK(!a.is_zero());
    }
}

TEST_CASE("isomorphism check is for reporting only") {
    CHECK(parse_group_spec("Z2xZ3").is_isomorphic(parse_group_spec("Z6")));
    CHECK(parse_group_spec("Z3xZ2").is_isomorphic(parse_group_spec("Z6")));
    CHECK(!parse_group_spec("Z4").is_isomorphic(parse_group_spec("Z2xZ2")));
    CHECK(parse_group_spec("Z2xZ3") != parse_group_spec("Z6"));  // structural identity
    CHECK(parse_group_spec("Z2xZ6").is_isomorphic(parse_group_spec("Z2xZ2xZ3")));
}

TEST_CASE("element text round trip") {
    AbelianGroup z22({2, 2});
    CHECK(z22.element_to_string({{1, 0}}) == "1,0");
    CHECK(z22.parse_element("1,0") == GroupElement{{1, 0}});
    CHECK_THROWS_AS(z22.parse_element("2,0"), UsageError);
    CHECK_THROWS_AS(z22.parse_element("1"), UsageError);
    CHECK_THROWS_AS(z22.parse_element("1,x"), UsageError);
    AbelianGroup z4({4});
    CHECK(z4.element_to_string({{3}}) == "3");
}
