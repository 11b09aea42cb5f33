#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "toric/exactlin.hpp"

using namespace toric;

namespace {

IntMatrix to_matrix(const oracle::Rows& rows, std::size_t cols)
{
    return IntMatrix::from_rows(rows, cols);
}

oracle::Rows random_rows(std::mt19937_64& rng, std::size_t r, std::size_t c, long long lo, long long hi)
{
    std::uniform_int_distribution<long long> dist(lo, hi);
    oracle::Rows a(r, std::vector<long long>(c));
    for (auto& row : a)
        for (auto& x : row)
            x = dist(rng);
    return a;
}

void check_snf_contract(const IntMatrix& a)
{
    SNFResult s = snf(a);
    REQUIRE(s.U * s.D * s.V == a);
    REQUIRE(s.U * s.U_inv == IntMatrix::identity(a.rows()));
    REQUIRE(s.V * s.V_inv == IntMatrix::identity(a.cols()));
    REQUIRE(abs(determinant(s.U)) == 1);
    REQUIRE(abs(determinant(s.V)) == 1);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j)
                REQUIRE(s.D(i, j) == 0);
    auto inv = s.invariants();
    for (std::size_t i = 0; i < inv.size(); ++i)
    {
        REQUIRE(inv[i] > 0);
        if (i + 1 < inv.size())
            REQUIRE(inv[i + 1] % inv[i] == 0);
    }
}

} // namespace

TEST_CASE("snf of identity and zero")
{
    auto s = snf(IntMatrix::identity(3));
    CHECK(s.D == IntMatrix::identity(3));
    auto z = snf(IntMatrix::zero(2, 2));
    CHECK(z.D == IntMatrix::zero(2, 2));
    CHECK(z.rank() == 0);
}

TEST_CASE("snf of a 2x2 example matches determinantal divisors")
{
    IntMatrix a{{2, 4}, {6, 8}};
    auto s = snf(a);
    CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
    auto expected = oracle::invariant_factors({{2, 4}, {6, 8}});
    REQUIRE(expected.size() == 2);
    CHECK(expected[0] == 2);
    CHECK(expected[1] == 4);
    check_snf_contract(a);
}

TEST_CASE("snf handles empty shapes")
{
    auto s = snf(IntMatrix(0, 3));
    CHECK(s.rank() == 0);
    CHECK(s.V == IntMatrix::identity(3));
    auto t = snf(IntMatrix(2, 0));
    CHECK(t.U == IntMatrix::identity(2));
}

TEST_CASE("snf contract and invariants on random matrices")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 150; ++trial)
    {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        auto rows = random_rows(rng, r, c, -6, 6);
        IntMatrix a = to_matrix(rows, c);
        check_snf_contract(a);
        auto inv = snf(a).invariants();
        auto expected = oracle::invariant_factors(rows);
        REQUIRE(inv.size() == expected.size());
        for (std::size_t i = 0; i < inv.size(); ++i)
            REQUIRE(inv[i] == expected[i]);
    }
}

TEST_CASE("snf is deterministic")
{
    IntMatrix a{{3, 5, 7}, {2, 4, 6}, {1, 1, 9}};
    auto s1 = snf(a), s2 = snf(a);
    CHECK(s1.U == s2.U);
    CHECK(s1.V == s2.V);
    CHECK(s1.D == s2.D);
}

TEST_CASE("snf survives entry growth beyond 64 bits")
{
    IntMatrix a(3, 3);
    Integer big = Integer(1) << 80;
    a(0, 0) = big;
    a(0, 1) = big + 1;
    a(1, 1) = big * 3;
    a(2, 2) = -big;
    a(2, 0) = 7;
    check_snf_contract(a);
}

TEST_CASE("rank_q small cases")
{
    CHECK(rank_q(IntMatrix::identity(4)) == 4);
    CHECK(rank_q(IntMatrix{{1, 2}, {2, 4}}) == 1);
    CHECK(rank_q(IntMatrix(0, 0)) == 0);
    CHECK(rank_q(IntMatrix::zero(3, 2)) == 0);
}

TEST_CASE("rank_q agrees with naive elimination, transpose and snf")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial)
    {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        auto rows = random_rows(rng, r, c, -3, 3);
        // force some dependent rows
        if (r > 2 && trial % 3 == 0)
            for (std::size_t j = 0; j < c; ++j)
                rows[r - 1][j] = 2 * rows[0][j] - rows[1][j];
        IntMatrix a = to_matrix(rows, c);
        const auto expected = oracle::rank(rows);
        REQUIRE(rank_q(a) == expected);
        REQUIRE(rank_q(a.transpose()) == expected);
        REQUIRE(snf(a).rank() == expected);
    }
}

TEST_CASE("determinant agrees with cofactor expansion")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::size_t n = 1 + rng() % 5;
        auto rows = random_rows(rng, n, n, -5, 5);
        REQUIRE(determinant(to_matrix(rows, n)) == oracle::det(rows));
    }
    CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("solve_integral examples")
{
    auto x = solve_integral(IntMatrix::identity(2), {3, -1});
    REQUIRE(x);
    CHECK(*x == IntVector{3, -1});
    CHECK_FALSE(solve_integral(IntMatrix{{2}}, {1}));
    // cone <e1, e3, e5> of the example fan
    IntMatrix cone{{1, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    CHECK(abs(determinant(cone)) == 1);
    for (long long d1 = -2; d1 <= 2; ++d1)
        for (long long d3 = -2; d3 <= 2; ++d3)
        {
            IntVector b{-d1, -d3, 5};
            auto s = solve_integral(cone, b);
            REQUIRE(s);
            REQUIRE(cone.apply(*s) == b);
        }
}

TEST_CASE("solve_integral agrees with brute-force search on random small systems")
{
    std::mt19937_64 rng(5);
    int with = 0, without = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        std::size_t r = 1 + rng() % 2, c = 1 + rng() % 2;
        auto rows = random_rows(rng, r, c, -3, 3);
        std::vector<long long> b(r);
        std::uniform_int_distribution<long long> bd(-4, 4);
        for (auto& v : b)
            v = bd(rng);
        IntMatrix a = to_matrix(rows, c);
        IntVector bb(b.begin(), b.end());
        auto x = solve_integral(a, bb);
        if (x)
        {
            ++with;
            REQUIRE(a.apply(*x) == bb);
        }
        else
        {
            ++without;
            // every solution of a system with entries <= 3 and |b| <= 4 in at most two
            // unknowns has a representative inside [-40, 40]^c if any exists
            REQUIRE_FALSE(oracle::has_small_solution(rows, b, 40));
        }
    }
    CHECK(with > 100);
    CHECK(without > 100);
}

TEST_CASE("solve_rational")
{
    auto x = solve_rational(IntMatrix{{2, 0}, {0, 3}}, {Rational(1), Rational(1)});
    REQUIRE(x);
    CHECK((*x)[0] == Rational(1, 2));
    CHECK((*x)[1] == Rational(1, 3));
    CHECK_FALSE(solve_rational(IntMatrix{{1, 2}, {2, 4}}, {Rational(1), Rational(1)}));
}

TEST_CASE("cokernel of the projective plane pairing")
{
    IntMatrix a{{1, 0}, {0, 1}, {-1, -1}};
    auto c = cokernel_map(a);
    CHECK(c.free_rank() == 1);
    CHECK(c.torsion().empty());
    auto e0 = c.project({1, 0, 0}), e1 = c.project({0, 1, 0}), e2 = c.project({0, 0, 1});
    CHECK(e0 == e1);
    CHECK(e1 == e2);
    CHECK(c.project({1, 1, 1}) == c.project({3, 0, 0}));
}

TEST_CASE("cokernel of the example fan has rank four and no torsion")
{
    IntMatrix a{{1, 1, 0}, {-1, -1, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, -1}, {0, 1, 1}};
    auto c = cokernel_map(a);
    CHECK(c.free_rank() == 4);
    CHECK(c.torsion().empty());
}

TEST_CASE("cokernel of zero map and torsion")
{
    auto z = cokernel_map(IntMatrix::zero(3, 2));
    CHECK(z.free_rank() == 3);
    auto t = cokernel_map(IntMatrix{{2, 0}, {0, 6}, {0, 0}});
    CHECK(t.free_rank() == 1);
    REQUIRE(t.torsion().size() == 2);
    CHECK(t.torsion()[0] == 2);
    CHECK(t.torsion()[1] == 6);
    CHECK(t.project({2, 0, 0}) == t.project({0, 0, 0}));
    CHECK(t.project({1, 0, 0}) != t.project({0, 0, 0}));
}

TEST_CASE("cokernel projection is invariant under the image")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 3;
        auto rows = random_rows(rng, r, c, -4, 4);
        IntMatrix a = to_matrix(rows, c);
        auto coker = cokernel_map(a);
        std::uniform_int_distribution<long long> dist(-9, 9);
        IntVector v(r), w(c);
        for (auto& x : v)
            x = dist(rng);
        for (auto& x : w)
            x = dist(rng);
        IntVector aw = a.apply(w), shifted(r);
        for (std::size_t i = 0; i < r; ++i)
            shifted[i] = v[i] + aw[i];
        REQUIRE(coker.project(shifted) == coker.project(v));
        // a unit vector outside the image changes the class
        auto zero = coker.project(IntVector(r, 0));
        REQUIRE(coker.project(aw) == zero);
    }
}

TEST_CASE("floor, ceil and narrowing")
{
    CHECK(floor(Rational(-3, 2)) == -2);
    CHECK(ceil(Rational(-3, 2)) == -1);
    CHECK(floor(Rational(4)) == 4);
    CHECK(floor_div(Integer(-7), Integer(2)) == -4);
    CHECK(mod_floor(Integer(-7), Integer(3)) == 2);
    CHECK(to_ll(Integer(-5)) == -5);
    CHECK_THROWS_AS(to_ll(Integer(1) << 70), std::overflow_error);
}
