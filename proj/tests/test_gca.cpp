#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mapspace/basis.hpp"
#include "mapspace/elem.hpp"
#include "mapspace/errors.hpp"
#include "mapspace/linalg.hpp"
#include "test_util.hpp"

using namespace mapspace;

TEST_CASE("koszul sign on generator products")
{
    GenCtx ctx({GenSym{"a5", 5}, GenSym{"b11", 11}, GenSym{"x8", 8}});
    Elem a = Elem::gen(ctx, 0), b = Elem::gen(ctx, 1), x = Elem::gen(ctx, 2);

    // even generator commutes with itself
    Elem xx = mul(ctx, x, x);
    CHECK(xx == Elem::term(ctx, Monomial::gen(ctx, 2, 2), 1));

    // |a||b| odd: b*a = -(a*b)
    CHECK(mul(ctx, b, a) == -mul(ctx, a, b));

    // odd square vanishes
    CHECK(mul(ctx, a, a).is_zero());
}

TEST_CASE("mixed-context product is rejected")
{
    GenCtx c1({GenSym{"x", 2}});
    GenCtx c2({GenSym{"y", 2}});
    Elem x = Elem::gen(c1, 0), y = Elem::gen(c2, 0);
    CHECK_THROWS_AS(mul(c1, x, y), ValidationError);
}

TEST_CASE("graded commutativity and associativity on random homogeneous elements")
{
    std::mt19937 rng(12345);
    for (int iter = 0; iter < 60; ++iter) {
        GenCtx ctx = testutil::random_ctx(4, 1, 5, rng);
        std::uniform_int_distribution<int> deg(1, 7);
        int du = deg(rng), dv = deg(rng), dw = deg(rng);
        Elem u = testutil::random_homogeneous(ctx, du, rng);
        Elem v = testutil::random_homogeneous(ctx, dv, rng);
        Elem w = testutil::random_homogeneous(ctx, dw, rng);

        Elem uv = mul(ctx, u, v);
        Elem vu = mul(ctx, v, u);
        if ((du & 1) && (dv & 1)) CHECK(uv == -vu);
        else CHECK(uv == vu);

        CHECK(mul(ctx, uv, w) == mul(ctx, u, mul(ctx, v, w)));
    }
}

TEST_CASE("basis enumeration matches the worked examples")
{
    GenCtx ctx({GenSym{"z3", 3}, GenSym{"z4", 4}, GenSym{"z10", 10}});

    auto b7 = enumerate_basis(ctx, 7);
    REQUIRE(b7.size() == 1);
    CHECK(b7[0].str(ctx) == "z3*z4");

    auto b8 = enumerate_basis(ctx, 8);
    REQUIRE(b8.size() == 1);
    CHECK(b8[0].str(ctx) == "z4^2");

    auto b0 = enumerate_basis(ctx, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].is_one());
}

TEST_CASE("basis enumeration rejects nonpositive degrees")
{
    GenCtx ctx({GenSym{"u", 0}});
    CHECK_THROWS_AS(enumerate_basis(ctx, 2), ValidationError);
    GenCtx ctx2({GenSym{"w", -3}});
    CHECK_THROWS_AS(enumerate_basis(ctx2, 2), ValidationError);
}

TEST_CASE("basis counts match the Hilbert series")
{
    std::mt19937 rng(777);
    for (int iter = 0; iter < 20; ++iter) {
        GenCtx ctx = testutil::random_ctx(4, 1, 6, rng);
        auto series = free_hilbert_series(ctx, 12);
        for (int n = 0; n <= 12; ++n) {
            Integer count(static_cast<long>(enumerate_basis(ctx, n).size()));
            CHECK(series[static_cast<std::size_t>(n)] == count);
        }
    }
}

TEST_CASE("solve: proportional rows give the expected kernel")
{
    LinSystem sys;
    sys.cols = 2;
    SparseVec r0, r1;
    r0.entries = {{0, frac(1)}, {1, frac(2)}};
    r1.entries = {{0, frac(2)}, {1, frac(4)}};
    sys.rows = {r0, r1};
    SolveResult res = solve(sys);
    CHECK(res.rank == 1);
    REQUIRE(res.kernel.size() == 1);
    SparseVec expect;
    expect.entries = {{0, frac(-2)}, {1, frac(1)}};
    CHECK(res.kernel[0] == expect);
}

TEST_CASE("solve: identity coordinates")
{
    LinSystem sys;
    sys.cols = 2;
    sys.rows = {SparseVec::unit(0), SparseVec::unit(1)};
    SolveResult res = solve(sys);
    SparseVec target;
    target.entries = {{0, frac(1)}, {1, frac(1)}};
    auto coords = res.coordinates(target);
    REQUIRE(coords.has_value());
    CHECK(*coords == target);
}

TEST_CASE("solve: rank-nullity on a quotient")
{
    // quotient of Q^3 by span{(1,0,0)} has dimension 2
    LinSystem sys;
    sys.cols = 3;
    sys.rows = {SparseVec::unit(0)};
    SolveResult res = solve(sys);
    CHECK(sys.cols - res.rank == 2);
}

TEST_CASE("solve: kernel annihilates and image is solvable")
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int iter = 0; iter < 40; ++iter) {
        LinSystem sys;
        sys.cols = dim(rng);
        int nrows = dim(rng);
        for (int i = 0; i < nrows; ++i) {
            SparseVec r;
            for (int j = 0; j < sys.cols; ++j) {
                Rational c = testutil::small_rat(rng);
                if (!rat_zero(c)) r.entries.emplace_back(j, c);
            }
            sys.rows.push_back(std::move(r));
        }
        SolveResult res = solve(sys);
        CHECK(res.rank + static_cast<int>(res.kernel.size()) == nrows);
        for (const SparseVec& k : res.kernel) {
            SparseVec acc;
            for (const auto& [i, c] : k.entries) sv_axpy(acc, c, sys.rows[static_cast<std::size_t>(i)]);
            CHECK(acc.empty());
        }
        for (const SparseVec& im : res.image) {
            auto coords = res.coordinates(im);
            REQUIRE(coords.has_value());
            SparseVec acc;
            for (const auto& [i, c] : coords->entries)
                sv_axpy(acc, c, sys.rows[static_cast<std::size_t>(i)]);
            CHECK(acc == im);
        }
    }
}

TEST_CASE("rref serial and parallel agree")
{
    std::mt19937 rng(5150);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<SparseVec> rows;
        for (int i = 0; i < 25; ++i) {
            SparseVec r;
            for (int j = 0; j < 18; ++j) {
                std::uniform_int_distribution<int> pick(0, 3);
                if (pick(rng) == 0) {
                    Rational c = testutil::small_rat(rng);
                    if (!rat_zero(c)) r.entries.emplace_back(j, c);
                }
            }
            rows.push_back(std::move(r));
        }
        auto serial = rref(rows, false);
        auto parallel = rref(rows, true);
        CHECK(serial == parallel);
    }
}
