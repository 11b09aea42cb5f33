#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "toric/picard.hpp"

using namespace toric;

TEST_CASE("plane: all rays have the same class")
{
    Fan f = oracle::fixture("P2");
    PicardGroup pic(f);
    CHECK(pic.free_rank() == 1);
    CHECK(pic.torsion().empty());
    CHECK(pic.ray_class(0) == pic.ray_class(1));
    CHECK(pic.ray_class(1) == pic.ray_class(2));
    // K = -3H
    CHECK(pic.classify(canonical_divisor(f)) == pic.scale(-3, pic.ray_class(0)));
    CHECK(pic.basis_coordinates(pic.classify(canonical_divisor(f))) == std::vector<long long>{-3});
}

TEST_CASE("smooth fixtures: rank is rays minus dimension, no torsion")
{
    for (const auto& name : oracle::fixture_names())
    {
        Fan f = oracle::fixture(name);
        PicardGroup pic(f);
        CHECK(pic.free_rank() == f.num_rays() - f.dim());
        CHECK(pic.torsion().empty());
    }
}

TEST_CASE("example fan: relations among ray classes")
{
    Fan f = oracle::fixture("ex4_fan");
    PicardGroup pic(f);
    REQUIRE(pic.basis() == std::vector<std::size_t>{0, 1, 5, 6});
    auto E = [&](int i) { return pic.ray_class(static_cast<std::size_t>(i - 1)); };
    CHECK(E(3) == pic.subtract(E(2), E(1)));
    CHECK(E(5) == pic.subtract(E(6), E(7)));
    CHECK(E(4) == pic.add(pic.subtract(E(2), E(1)), pic.subtract(E(6), E(7))));
    CHECK(pic.basis_coordinates(E(4)) == std::vector<long long>{-1, 1, 1, -1});
}

TEST_CASE("class equality matches integral solvability of the difference")
{
    std::mt19937_64 rng(21);
    for (const auto& name : oracle::fixture_names())
    {
        Fan f = oracle::fixture(name);
        PicardGroup pic(f);
        IntMatrix rays = f.ray_matrix();
        for (int t = 0; t < 60; ++t)
        {
            auto a = oracle::random_divisor(rng, f.num_rays(), -2, 2);
            auto b = oracle::random_divisor(rng, f.num_rays(), -2, 2);
            IntVector diff;
            for (std::size_t i = 0; i < f.num_rays(); ++i)
                diff.push_back(a[i] - b[i]);
            const bool same = pic.classify(a) == pic.classify(b);
            REQUIRE(same == solve_integral(rays, diff).has_value());
        }
    }
}

TEST_CASE("principal shifts do not change the class; canonical representatives vanish off the basis")
{
    std::mt19937_64 rng(22);
    for (const auto& name : oracle::fixture_names())
    {
        Fan f = oracle::fixture(name);
        PicardGroup pic(f);
        for (int t = 0; t < 40; ++t)
        {
            auto d = oracle::random_divisor(rng, f.num_rays(), -3, 3);
            Weight m(f.dim());
            std::uniform_int_distribution<long long> dist(-4, 4);
            for (auto& x : m)
                x = dist(rng);
            auto shifted = d + principal_divisor(f, m);
            REQUIRE(pic.classify(shifted) == pic.classify(d));
            auto rep = pic.canonical_representative(d);
            REQUIRE(pic.classify(rep) == pic.classify(d));
            for (std::size_t i = 0; i < f.num_rays(); ++i)
                if (std::find(pic.basis().begin(), pic.basis().end(), i) == pic.basis().end())
                    REQUIRE(rep[i] == 0);
            auto c = pic.classify(d);
            REQUIRE(pic.from_basis_coordinates(pic.basis_coordinates(c)) == c);
            REQUIRE(c.representative == rep);
        }
    }
}

TEST_CASE("group operations")
{
    Fan f = oracle::fixture("P1xP1");
    PicardGroup pic(f);
    auto a = pic.classify(TorusDivisor{{1, 0, 0, 0}});
    auto b = pic.classify(TorusDivisor{{0, 1, 0, 0}});
    CHECK(pic.add(a, b) == pic.classify(TorusDivisor{{1, 1, 0, 0}}));
    CHECK(pic.subtract(a, a) == pic.zero());
    CHECK(pic.scale(3, b) == pic.classify(TorusDivisor{{0, 0, 0, 3}}));
    CHECK_FALSE(a == b);
    CHECK(divisor_class(f, TorusDivisor{{0, 0, 1, 0}}) == a);
}
