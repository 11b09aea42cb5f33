#include <catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "toric/io.hpp"

using namespace toric;
using nlohmann::json;

TEST_CASE("fan JSON round trip")
{
    for (const auto& name : oracle::fixture_names())
    {
        Fan f = oracle::fixture(name);
        Fan g = fan_from_json(fan_to_json(f));
        CHECK(g.rays() == f.rays());
        CHECK(g.max_cones() == f.max_cones());
        CHECK(g.pic_basis_hint() == f.pic_basis_hint());
    }
}

TEST_CASE("malformed fan input")
{
    std::istringstream bad("{\"dim\": 2, \"rays\": [");
    CHECK_THROWS_AS(parse_json(bad, "x"), InputError);
    CHECK_THROWS_AS(fan_from_json(json{{"dim", 2}}), InputError);
    CHECK_THROWS_AS(fan_from_json(json{{"dim", 2}, {"rays", "no"}, {"max_cones", json::array()}}), InputError);
    CHECK_THROWS_AS(fan_from_json(json{{"dim", 2}, {"rays", {{2, 0}, {0, 1}}}, {"max_cones", {{0, 1}}}}),
                    InputError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/fan.json"), InputError);
}

TEST_CASE("divisor parsing")
{
    CHECK(parse_divisor("0,0,2").coeffs == std::vector<long long>{0, 0, 2});
    CHECK(parse_divisor("(-1,1,0,0,0,1,-1)").coeffs == std::vector<long long>{-1, 1, 0, 0, 0, 1, -1});
    CHECK(parse_divisor("d=(0,0,2)").coeffs == std::vector<long long>{0, 0, 2});
    CHECK(parse_divisor("[3, -4]").coeffs == std::vector<long long>{3, -4});
    CHECK(parse_divisor("(\xE2\x88\x92" "1,2)").coeffs == std::vector<long long>{-1, 2});
    CHECK_THROWS_AS(parse_divisor("1,x,2"), InputError);
    CHECK_THROWS_AS(parse_divisor("()"), InputError);
    CHECK(divisor_from_json(json{{"coeffs", {1, 2}}}).coeffs == std::vector<long long>{1, 2});
    CHECK(divisor_from_json(json::array({5})).coeffs == std::vector<long long>{5});
}

TEST_CASE("quiver JSON round trip and errors")
{
    Fan f = oracle::fixture("ex4_fan");
    json j = read_json_file(oracle::data("ex4_quiver.json"));
    Quiver q = quiver_from_json(j, f.num_rays());
    CHECK(q.num_vertices() == 5);
    CHECK(q.num_arrows() == 7);
    CHECK(q.vertices()[q.base_vertex()].id == "e");
    CHECK(q.vertices()[0].weight == -2);
    Quiver r = quiver_from_json(quiver_to_json(q), f.num_rays());
    for (std::size_t a = 0; a < 7; ++a)
    {
        CHECK(r.arrows()[a].tail == q.arrows()[a].tail);
        CHECK(r.arrows()[a].head == q.arrows()[a].head);
        CHECK(r.arrows()[a].ray == q.arrows()[a].ray);
    }
    json broken = j;
    broken["arrows"][0]["tail"] = "z";
    CHECK_THROWS_AS(quiver_from_json(broken, f.num_rays()), InputError);
    CHECK_THROWS_AS(quiver_from_json(j, 6), InputError);
}

TEST_CASE("collection JSON round trip")
{
    Fan f = oracle::fixture("ex4_fan");
    PicardGroup pic(f);
    std::vector<BundleClass> b{{pic.classify(TorusDivisor{{1, 0, 0, 0, 0, 0, 0}}), "one"},
                               {pic.classify(TorusDivisor{{0, 0, 1, 0, 0, 0, 0}}), "two"}};
    auto back = collection_from_json(collection_to_json(pic, b), pic);
    REQUIRE(back.size() == 2);
    CHECK(back[0].cls == b[0].cls);
    CHECK(back[1].cls == b[1].cls);
    CHECK(back[1].provenance == "two");
    CHECK_THROWS_AS(collection_from_json(json{{"classes", {{{"coeffs", {1, 2}}}}}}, pic), InputError);
}

TEST_CASE("cohomology table JSON round trip")
{
    Fan f = oracle::fixture("ex4_fan");
    CohomologyEngine e(f);
    ScanOptions opts;
    opts.classify = true;
    auto t = total_cohomology(e, TorusDivisor{{-1, 2, 0, 0, 0, 0, 0}}, opts);
    auto dumped = table_to_json(t).dump();
    std::istringstream in(dumped);
    auto back = table_from_json(parse_json(in, "table"));
    CHECK(back.totals == t.totals);
    CHECK(back.box == t.box);
    REQUIRE(back.weights.size() == t.weights.size());
    for (std::size_t i = 0; i < t.weights.size(); ++i)
    {
        CHECK(back.weights[i].m == t.weights[i].m);
        CHECK(back.weights[i].facets == t.weights[i].facets);
        CHECK(back.weights[i].h == t.weights[i].h);
    }
    REQUIRE(back.classes.size() == t.classes.size());
    for (std::size_t i = 0; i < t.classes.size(); ++i)
    {
        CHECK(back.classes[i].facets == t.classes[i].facets);
        CHECK(back.classes[i].count == t.classes[i].count);
        CHECK(back.classes[i].betti == t.classes[i].betti);
    }
    CHECK(table_to_json(back).dump() == dumped);
}

TEST_CASE("region table")
{
    auto table = region_table_from_json(read_json_file(oracle::data("ex4_regions.json")));
    CHECK(table.coordinates == std::vector<std::size_t>{0, 1, 5, 6});
    REQUIRE(table.regions.size() == 24);
    std::vector<std::size_t> per_degree(4, 0);
    for (const auto& r : table.regions)
        ++per_degree[r.degree];
    CHECK(per_degree == std::vector<std::size_t>{1, 11, 11, 1});
    std::vector<long long> x{-1, 1, 1, -1};
    CHECK(table.predicts(0, x));
    CHECK_FALSE(table.predicts(1, x));
    CHECK_FALSE(table.predicts(2, x));
    CHECK_FALSE(table.predicts(3, x));
    CHECK(table.regions[0].contains(x));
    CHECK_THROWS_AS(region_table_from_json(json{{"coordinates", {0}},
                                                {"regions", {{{"index", 1}, {"degree", 0},
                                                              {"inequalities", {{{"coeffs", {1}}, {"op", "<"}, {"rhs", 0}}}}}}}}),
                    InputError);
}
