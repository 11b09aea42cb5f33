#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "toric/weights.hpp"

using namespace toric;

namespace {

std::vector<std::uint64_t> totals(const Fan& f, const TorusDivisor& d)
{
    return total_cohomology(f, d).totals;
}

} // namespace

TEST_CASE("box of O(-2) on the line")
{
    Fan p1 = oracle::fixture("P1");
    TorusDivisor d{{-1, -1}};
    WeightBox box = weight_box(p1, d);
    // hull of the vertices -1 and 1, widened by one
    CHECK(box.lower == Weight{-2});
    CHECK(box.upper == Weight{2});
    CHECK(box.contains(Weight{-1}));
    CHECK(box.contains(Weight{1}));
    CHECK(box.on_boundary(Weight{2}));
    CHECK_FALSE(box.on_boundary(Weight{0}));
    CHECK(box.num_points() == 5);
}

TEST_CASE("box doubling")
{
    WeightBox b{{-2, 0}, {2, 3}};
    auto d = b.doubled();
    CHECK(d.contains(Weight{-2, 0}));
    CHECK(d.contains(Weight{2, 3}));
    CHECK(d.num_points() > 3 * b.num_points());
}

TEST_CASE("trivial bundle on the plane lives in weight zero")
{
    Fan p2 = oracle::fixture("P2");
    auto t = total_cohomology(p2, TorusDivisor{{0, 0, 0}});
    CHECK(t.totals == std::vector<std::uint64_t>{1, 0, 0});
    REQUIRE(t.weights.size() == 1);
    CHECK(t.weights[0].m == Weight{0, 0});
    CHECK(t.box.contains(Weight{0, 0}));
}

TEST_CASE("classical values on the projective line and plane")
{
    Fan p1 = oracle::fixture("P1"), p2 = oracle::fixture("P2");
    for (long long k = -6; k <= 6; ++k)
    {
        CHECK(totals(p1, TorusDivisor{{k, 0}}) == oracle::p1(k));
        CHECK(totals(p2, TorusDivisor{{0, 0, k}}) == oracle::p2(k));
    }
    CHECK(totals(p2, TorusDivisor{{0, 0, 2}}) == std::vector<std::uint64_t>{6, 0, 0});
    CHECK(totals(p2, TorusDivisor{{0, 0, -3}}) == std::vector<std::uint64_t>{0, 0, 1});
}

TEST_CASE("Kunneth on P1 x P1")
{
    Fan f = oracle::fixture("P1xP1");
    for (long long a = -3; a <= 3; ++a)
        for (long long b = -3; b <= 3; ++b)
        {
            auto x = oracle::p1(a), y = oracle::p1(b);
            std::vector<std::uint64_t> expected{x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[1] * y[1]};
            REQUIRE(totals(f, TorusDivisor{{a, b, 0, 0}}) == expected);
        }
}

TEST_CASE("totals equal the sum of the listed weights")
{
    Fan f = oracle::fixture("ex4_fan");
    auto t = total_cohomology(f, TorusDivisor{{-1, 2, 0, 0, 0, 0, 0}});
    CHECK(t.totals == std::vector<std::uint64_t>{2, 1, 0, 0});
    std::vector<std::uint64_t> sum(4, 0);
    for (const auto& w : t.weights)
    {
        REQUIRE(t.box.contains(w.m));
        REQUIRE_FALSE(w.vanishes());
        for (std::size_t p = 0; p < 4; ++p)
            sum[p] += w.h[p];
    }
    CHECK(sum == t.totals);
    CHECK(std::is_sorted(t.weights.begin(), t.weights.end(),
                         [](const auto& a, const auto& b) { return a.m < b.m; }));
}

TEST_CASE("example fan: the region-one point has no higher cohomology")
{
    Fan f = oracle::fixture("ex4_fan");
    auto t = totals(f, TorusDivisor{{-1, 1, 0, 0, 0, 1, -1}});
    CHECK(t[0] > 0);
    CHECK(t[1] == 0);
    CHECK(t[2] == 0);
    CHECK(t[3] == 0);
}

TEST_CASE("h0 counts polytope lattice points; Serre duality; box doubling")
{
    std::mt19937_64 rng(61);
    for (const auto& name : oracle::fixture_names())
    {
        Fan f = oracle::fixture(name);
        CohomologyEngine e(f);
        const auto k = canonical_divisor(f);
        const std::size_t n = f.dim();
        for (int t = 0; t < 40; ++t)
        {
            auto d = oracle::random_divisor(rng, f.num_rays(), -3, 3);
            auto td = total_cohomology(e, d);
            REQUIRE(td.totals[0] == oracle::count_polytope_points(f, d, 10));
            auto tk = total_cohomology(e, k - d).totals;
            for (std::size_t p = 0; p <= n; ++p)
                REQUIRE(td.totals[p] == tk[n - p]);
            auto doubled = total_cohomology_in_box(e, d, td.box.doubled(), {});
            REQUIRE(doubled.totals == td.totals);
        }
    }
}

TEST_CASE("result does not depend on the thread count or the route")
{
    Fan f = oracle::fixture("ex4_fan");
    CohomologyEngine e(f);
    std::mt19937_64 rng(62);
    for (int t = 0; t < 10; ++t)
    {
        auto d = oracle::random_divisor(rng, 7, -3, 3);
        ScanOptions one, many, cech;
        one.classify = many.classify = cech.classify = true;
        many.threads = 4;
        cech.route = Route::cech;
        auto a = total_cohomology(e, d, one), b = total_cohomology(e, d, many), c = total_cohomology(e, d, cech);
        REQUIRE(a.totals == b.totals);
        REQUIRE(a.totals == c.totals);
        REQUIRE(a.weights.size() == b.weights.size());
        for (std::size_t i = 0; i < a.weights.size(); ++i)
        {
            REQUIRE(a.weights[i].m == b.weights[i].m);
            REQUIRE(a.weights[i].h == b.weights[i].h);
            REQUIRE(a.weights[i].facets == c.weights[i].facets);
        }
        REQUIRE(a.classes.size() == b.classes.size());
        for (std::size_t i = 0; i < a.classes.size(); ++i)
        {
            REQUIRE(a.classes[i].facets == b.classes[i].facets);
            REQUIRE(a.classes[i].count == b.classes[i].count);
            REQUIRE(a.classes[i].facets == c.classes[i].facets);
            REQUIRE(a.classes[i].count == c.classes[i].count);
        }
    }
}

TEST_CASE("weight classes")
{
    Fan p1 = oracle::fixture("P1");
    auto classes = classify_weights(p1, TorusDivisor{{-2, 0}});
    // m<2 violates ray 1 and m>0 violates ray 2, so J is never empty on this box
    std::set<std::vector<std::size_t>> seen;
    std::uint64_t count = 0;
    for (const auto& c : classes)
    {
        seen.insert(c.facets.indices());
        count += c.count;
    }
    CHECK(seen.size() == 3);
    CHECK_FALSE(seen.count({}));
    CHECK(count == weight_box(p1, TorusDivisor{{-2, 0}}).num_points());

    Fan f = oracle::fixture("ex4_fan");
    auto kc = classify_weights(f, canonical_divisor(f));
    bool full = false;
    for (const auto& c : kc)
        if (c.facets == RaySet::full(7))
        {
            full = true;
            CHECK(c.betti.at(2) == 1);
            CHECK(c.h == std::vector<std::size_t>{0, 0, 0, 1});
        }
    CHECK(full);

    // ample: the empty facet set counts the polytope's lattice points, everything else is acyclic
    std::mt19937_64 rng(64);
    TorusDivisor amp = oracle::random_divisor(rng, 7, 0, 3);
    for (int t = 0; t < 10000 && !is_ample(f, amp); ++t)
        amp = oracle::random_divisor(rng, 7, 0, 3);
    REQUIRE(is_ample(f, amp));
    for (const auto& c : classify_weights(f, amp))
    {
        if (c.facets.empty())
            CHECK(c.count == polytope_lattice_points(f, amp).size());
        else
            CHECK(c.betti.acyclic());
    }
}

TEST_CASE("ample divisors: higher cohomology vanishes")
{
    std::mt19937_64 rng(63);
    for (const auto& name : oracle::fixture_names())
    {
        Fan f = oracle::fixture(name);
        CohomologyEngine e(f);
        int found = 0;
        for (int t = 0; t < 2000 && found < 10; ++t)
        {
            auto d = oracle::random_divisor(rng, f.num_rays(), -2, 4);
            if (!is_ample(f, d))
                continue;
            ++found;
            auto tot = total_cohomology(e, d).totals;
            for (std::size_t p = 1; p < tot.size(); ++p)
                REQUIRE(tot[p] == 0);
        }
        CHECK(found == 10);
    }
}

TEST_CASE("non-Cartier divisors are rejected")
{
    Fan q(2, {{1, 0}, {1, 2}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK_THROWS_AS(total_cohomology(q, TorusDivisor{{1, 0, 0, 0}}), FanError);
}
