#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mapspace/errors.hpp"
#include "mapspace/reduction.hpp"
#include "test_util.hpp"

using namespace mapspace;

namespace {

FiniteAlgebra s5_x_s11() { return tensor_algebra(sphere_algebra(5), sphere_algebra(11)); }

FiniteAlgebra nonformal_s2()
{
    FiniteAlgebraSpec s;
    s.name = "S2big";
    s.labels = {"h2", "e3", "b4"};
    s.degrees = {2, 3, 4};
    s.products[{0, 0}] = SparseVec::unit(2);
    s.diff[1] = SparseVec::unit(2);
    return validate_finite(s);
}

bool reduced_diff_zero(const KillResult& kr)
{
    for (const Elem& d : kr.reduced.diff)
        if (!d.is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("kill_acyclic leaves a model without e/b generators unchanged")
{
    MapModel mm = build_map_model(s5_x_s11(), sphere_model(8), 14);
    KillResult kr = kill_acyclic(mm, -1, 14, true);
    CHECK(kr.killed.empty());
    CHECK(kr.quasi_iso);
    CHECK(kr.literal_ideal_stable);
    CHECK(kr.reduced.ctx.size() == mm.model.ctx.size());
}

TEST_CASE("kill_acyclic removes a contractible pair and preserves Betti numbers")
{
    // X with an e/b pair, Y = K(Q, 9): D is pure pairing, the pair contracts
    MapModel mm = build_map_model(nonformal_s2(), eilenberg_model(9), 12);
    KillResult kr = kill_acyclic(mm, -1, 12, true);
    CHECK(kr.killed.size() == 1);  // one (b,e) pair: degrees 5 and 6
    CHECK(kr.quasi_iso);
    CHECK(reduced_diff_zero(kr));
    for (const auto& zi : kr.reduced_info) CHECK(zi.kind == 'h');
}

TEST_CASE("kill_acyclic on the CP3 vs S8 model leaves only h generators")
{
    MapModel mm = build_map_model(truncated_poly(2, 4), sphere_model(8), 14);
    KillResult kr = kill_acyclic(mm, -1, 14, true);
    CHECK(kr.quasi_iso);
    for (const auto& zi : kr.reduced_info) CHECK(zi.kind == 'h');
}

TEST_CASE("the literal e/b ideal can fail to be differential while the closure works")
{
    // X = nonformal S2 model, Y = (u6, u6b, w11; dw = u*u'):
    // D(b^ x w) = -e^ x w +- (h^ x u)(h^ x u') has an all-h term.
    GenCtx ctx({GenSym{"u6", 6}, GenSym{"u6b", 6}, GenSym{"w11", 11}});
    Elem dw = mul(ctx, Elem::gen(ctx, 0), Elem::gen(ctx, 1));
    FreeModel y = validate_free("Y2", ctx, {Elem::zero(), Elem::zero(), dw});
    REQUIRE(differential_length(y) == 2);

    FiniteAlgebra x = nonformal_s2();
    REQUIRE(cup_length(x) == 1);

    MapModel mm = build_map_model(x, y, 13);
    KillResult kr = kill_acyclic(mm, -1, 13, true);
    CHECK(!kr.literal_ideal_stable);
    CHECK(kr.quasi_iso);
    CHECK(reduced_diff_zero(kr));  // Theorem 1.2(1): cup0 = 1 < 2 = dl
}

TEST_CASE("freeness_pipeline: direct fallback on (S5 x S11, S8)")
{
    PipelineReport rep = freeness_pipeline(s5_x_s11(), sphere_model(8), 14);
    CHECK(rep.branch == PipelineBranch::DirectFallback);
    CHECK(rep.cup == 2);
    CHECK(rep.dl == 2);
    CHECK(rep.conn == 7);
    CHECK(rep.dim == 16);
    CHECK(rep.is_free);
    REQUIRE(rep.generators.size() == 3);
    CHECK(rep.generators[0] == std::pair<int, int>{3, 1});
    CHECK(rep.generators[1] == std::pair<int, int>{4, 1});
    CHECK(rep.generators[2] == std::pair<int, int>{10, 1});
}

TEST_CASE("freeness_pipeline: converse branch on (CP2, S6)")
{
    PipelineReport rep = freeness_pipeline(truncated_poly(2, 3), sphere_model(6), 8);
    CHECK(rep.branch == PipelineBranch::ConverseWitness);
    CHECK(rep.cup == 2);
    CHECK(rep.dl == 2);
    CHECK(rep.dim == 4);
    CHECK(rep.conn == 5);
    CHECK(!rep.is_free);
    CHECK(rep.first_failure == 8);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->y_degree == 11);
    CHECK(rep.witness->r == 2);
    CHECK(rep.witness->omega_degree == 4);
    CHECK(rep.witness->obstruction_degree == 7);
}

TEST_CASE("freeness_pipeline: theorem branch on a trivial-products space")
{
    PipelineReport rep = freeness_pipeline(trivial_products({3, 3, 8}), sphere_model(8), 12);
    CHECK(rep.branch == PipelineBranch::TheoremFree);
    CHECK(rep.cup == 1);
    CHECK(rep.is_free);
    CHECK(!rep.degree_bounded);
}

TEST_CASE("freeness_pipeline: a point yields the trivial free answer")
{
    PipelineReport rep = freeness_pipeline(trivial_products({}), sphere_model(8), 10);
    CHECK(rep.is_free);
    CHECK(rep.generators.empty());
    CHECK(rep.cup == 0);
}

TEST_CASE("kill_acyclic with a partial prefix removes only the early pairs")
{
    // Y with two wired generators: u6 (d = 0) and w11 (dw = u^2); X has an e/b
    // pair, so each Y generator contributes one killable pair.
    FiniteAlgebra x = nonformal_s2();
    FreeModel y = sphere_model(6);
    MapModel mm = build_map_model(x, y, 14);
    KillResult all = kill_acyclic(mm, -1, 12, false);
    KillResult first = kill_acyclic(mm, 1, 12, false);
    CHECK(all.killed.size() > first.killed.size());
    for (const auto& zi : first.reduced_info)
        if (zi.kind != 'h') CHECK(zi.v_ord >= 1);
}

TEST_CASE("nonfree_witness worked examples")
{
    // (CP2, S6): y = v11, r = 2, omega = x^2, obstruction degree 7
    Witness w = nonfree_witness(truncated_poly(2, 3), sphere_model(6), 12);
    CHECK(w.y_degree == 11);
    CHECK(w.r == 2);
    CHECK(w.omega_degree == 4);
    CHECK(w.obstruction_degree == 7);
    CHECK(w.omega_factors.size() == 2);

    // (CP3, S8): y = y15, r = 2, omega = x^3, obstruction degree 15 - 6 = 9
    // (the maximal-degree product x^3 is discovered as x * x^2, length 2 >= r)
    Witness w2 = nonfree_witness(truncated_poly(2, 4), sphere_model(8), 15);
    CHECK(w2.y_degree == 15);
    CHECK(w2.r == 2);
    CHECK(w2.omega_degree == 6);
    CHECK(w2.obstruction_degree == 9);
    CHECK(w2.omega_pretty == "x3");
    CHECK(w2.omega_factors.size() >= 2);

    // trivial products: cup0 = 1 < dl -> NoWitness
    CHECK_THROWS_AS(nonfree_witness(trivial_products({3, 3, 8}), sphere_model(8), 12),
                    PreconditionError);
}

TEST_CASE("hn_check equals r <= dl on the worked models")
{
    FreeModel s8 = sphere_model(8);
    CHECK(hn_check(s8, 1));
    CHECK(hn_check(s8, 2));
    CHECK(!hn_check(s8, 3));

    FreeModel flat = eilenberg_model(5);
    for (int r = 1; r <= 6; ++r) CHECK(hn_check(flat, r));

    FreeModel p4 = power_model(2, 4);  // dy = x^4
    CHECK(hn_check(p4, 4));
    CHECK(!hn_check(p4, 5));
}

TEST_CASE("hn_structure exposes the surviving mixed term")
{
    FreeModel p4 = power_model(2, 4);
    HnStructure hs = hn_structure(p4, 5);
    CHECK(!hs.morphism);
    // phi(dy) = (x' + x'')^4 has surviving mixed terms below word length 5
    bool found = false;
    for (const Elem& e : hs.phi_dv)
        if (!e.is_zero()) found = true;
    CHECK(found);

    HnStructure hs4 = hn_structure(p4, 4);
    CHECK(hs4.morphism);
    for (const Elem& e : hs4.phi_dv) CHECK(e.is_zero());
}

TEST_CASE("hn_check matches dl on randomized minimal models")
{
    std::mt19937 rng(1759);
    for (int iter = 0; iter < 12; ++iter) {
        FreeModel m = testutil::random_minimal_model(3, rng, 2, 7);
        int dl = differential_length(m);
        int r_max = dl_is_infinite(dl) ? 7 : dl + 2;
        for (int r = 1; r <= r_max; ++r) {
            bool expect = dl_is_infinite(dl) || r <= dl;
            CHECK(hn_check(m, r) == expect);
        }
    }
}

TEST_CASE("postnikov tower of (CP3, S8)")
{
    TowerReport rep = postnikov_tower(truncated_poly(2, 4), sphere_model(8), 12);
    CHECK(rep.nilpotency == 3);
    CHECK(rep.m_eff == 4);
    CHECK(rep.r == 2);
    CHECK(rep.s == 2);
    CHECK(rep.hypothesis_met);  // dim 6 <= conn 7
    REQUIRE(rep.stages.size() == 3);

    // chain ideals (A+)^3 then (A+)^2, then the base A/(A+)^2
    CHECK(rep.stages[0].power == 3);
    CHECK(rep.stages[1].power == 2);
    CHECK(rep.stages[2].is_base);
    for (const TowerStage& st : rep.stages) {
        CHECK(st.fiber_zero_differential);
        CHECK(st.fiber_quasi_iso);
        CHECK(st.fiber_dim == 1);  // x^3, x^2, x
    }
    CHECK(rep.achieved == 3);
    CHECK(rep.achieved <= rep.s + 1);
    CHECK(!rep.matches_paper_s);  // the verified chain has one stage beyond s
}

TEST_CASE("postnikov tower collapses for a trivial-products space")
{
    TowerReport rep = postnikov_tower(trivial_products({3, 3, 8}), sphere_model(8), 12);
    CHECK(rep.m_eff == 2);
    CHECK(rep.s == 1);
    CHECK(!rep.hypothesis_met);  // dim 8 > conn 7, reported not fatal
    CHECK(rep.achieved == 1);    // only the base survives
    for (const TowerStage& st : rep.stages) CHECK(st.fiber_zero_differential);
}

TEST_CASE("postnikov tower of (S5 x S11, S8) has two verified stages")
{
    TowerReport rep = postnikov_tower(s5_x_s11(), sphere_model(8), 12);
    CHECK(rep.m_eff == 3);
    CHECK(rep.s == 1);
    REQUIRE(rep.stages.size() == 2);
    CHECK(rep.stages[0].power == 2);  // (A+)^2 = span(ab)
    CHECK(rep.stages[0].fiber_dim == 1);
    CHECK(rep.stages[1].is_base);
    CHECK(rep.stages[1].fiber_dim == 2);
    for (const TowerStage& st : rep.stages) {
        CHECK(st.fiber_zero_differential);
        CHECK(st.fiber_quasi_iso);
    }
    CHECK(rep.achieved == 2);
}

TEST_CASE("postnikov preconditions")
{
    CHECK_THROWS_AS(postnikov_tower(trivial_products({}), sphere_model(8), 10), PreconditionError);
    CHECK_THROWS_AS(postnikov_tower(s5_x_s11(), sphere_model(3), 10), PreconditionError);
}

TEST_CASE("free iff cup0 < dl when dim <= conn, against the direct oracle")
{
    // Y models connective enough to dominate every X dimension here
    std::vector<FreeModel> ys;
    ys.push_back(power_model(8, 2));   // dl 2, conn 7
    ys.push_back(power_model(8, 3));   // dl 3, conn 7
    ys.push_back(power_model(8, 4));   // dl 4, conn 7
    ys.push_back(sphere_model(9));     // dl inf, conn 8
    std::vector<FiniteAlgebra> xs = {truncated_poly(2, 3), truncated_poly(2, 4), nonformal_s2(),
                                     sphere_algebra(4)};
    for (const FiniteAlgebra& x : xs) {
        for (const FreeModel& y : ys) {
            if (x.top_degree() > connectivity(y)) continue;
            int N = 12;
            PipelineReport pr = freeness_pipeline(x, y, N);
            bool cup_lt_dl = dl_is_infinite(pr.dl) || pr.cup < pr.dl;
            CHECK(pr.is_free == cup_lt_dl);
            // direct oracle through N; a NOT_FREE verdict whose obstruction
            // sits above N legitimately looks free in the bounded window
            MapModel mm = build_map_model(x, y, N + std::max(0, x.top_degree() - 1));
            FreenessVerdict fv = freeness_check(cohomology(FreeView(mm.model, N), N), N);
            if (pr.is_free) {
                CHECK(fv.is_free);
            } else {
                CHECK(fv.is_free == (pr.first_failure < 0));
                if (!fv.is_free) CHECK(pr.first_failure == fv.first_failure);
            }
        }
    }
}

TEST_CASE("predicate killing preserves Betti numbers with boundaries present")
{
    FiniteAlgebra x = nonformal_s2();
    FreeModel y = sphere_model(6);
    MapModel mm = build_map_model(x, y, 12);
    KillResult kr = kill_acyclic_if(
        mm, [&](int v) { return y.ctx.degree(v) < 11; }, 10, true);
    CHECK(kr.quasi_iso);
}

TEST_CASE("theorem 1.2(1) on randomized pairs: reduced differential vanishes")
{
    std::mt19937 rng(60622);
    std::vector<FiniteAlgebra> xs = {trivial_products({3, 3, 8}), nonformal_s2(), sphere_algebra(5)};
    int done = 0;
    for (int iter = 0; iter < 10 && done < 12; ++iter) {
        FreeModel y = testutil::random_minimal_model(3, rng, 3, 8);
        int dl = differential_length(y);
        for (const auto& x : xs) {
            if (!(dl_is_infinite(dl) || cup_length(x) < dl)) continue;
            MapModel mm = build_map_model(x, y, 10);
            KillResult kr = kill_acyclic(mm, -1, 10, true);
            CHECK(kr.quasi_iso);
            CHECK(reduced_diff_zero(kr));
            ++done;
        }
    }
    CHECK(done >= 6);
}
