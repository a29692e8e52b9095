#pragma once

#include <random>
#include <vector>

#include "mapspace/basis.hpp"
#include "mapspace/cohomology.hpp"
#include "mapspace/elem.hpp"
#include "mapspace/free_model.hpp"
#include "mapspace/linalg.hpp"

namespace testutil {

using namespace mapspace;

inline Rational small_rat(std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    return frac(num(rng), den(rng));
}

/// Random homogeneous element of the given degree (possibly zero).
inline Elem random_homogeneous(const GenCtx& ctx, int degree, std::mt19937& rng)
{
    Elem out;
    for (const Monomial& m : enumerate_basis(ctx, degree)) {
        std::uniform_int_distribution<int> pick(0, 2);
        if (pick(rng) == 0) out += Elem::term(ctx, m, small_rat(rng));
    }
    return out;
}

/// Random generator context with mixed parities, degrees in [lo, hi].
inline GenCtx random_ctx(int count, int lo, int hi, std::mt19937& rng)
{
    std::uniform_int_distribution<int> deg(lo, hi);
    std::vector<GenSym> gens;
    for (int i = 0; i < count; ++i)
        gens.push_back(GenSym{"g" + std::to_string(i), deg(rng)});
    return GenCtx(std::move(gens));
}

/// Random minimal model: generators of ascending-ish degree, each differential
/// drawn from the kernel of d on decomposables (so d^2 = 0 holds by
/// construction and validate_free accepts it).
inline FreeModel random_minimal_model(int gen_count, std::mt19937& rng, int lo = 2, int hi = 7)
{
    std::uniform_int_distribution<int> deg(lo, hi);
    std::vector<int> degrees;
    for (int i = 0; i < gen_count; ++i) degrees.push_back(deg(rng));
    std::sort(degrees.begin(), degrees.end());

    std::vector<GenSym> gens;
    for (int i = 0; i < gen_count; ++i)
        gens.push_back(GenSym{"v" + std::to_string(i) + "_" + std::to_string(degrees[static_cast<std::size_t>(i)]),
                              degrees[static_cast<std::size_t>(i)]});
    GenCtx ctx(std::move(gens));

    std::vector<Elem> diff(static_cast<std::size_t>(gen_count), Elem::zero());
    for (int k = 1; k < gen_count; ++k) {
        // candidate monomials: decomposable words of degree |v_k|+1 on earlier gens
        std::vector<GenSym> early;
        for (int r = 0; r < k; ++r) early.push_back(ctx.gen(r));
        GenCtx ectx(early);
        std::vector<Monomial> cand;
        for (const Monomial& m : enumerate_basis(ectx, ctx.degree(k) + 1))
            if (m.word_length() >= 2) cand.push_back(m);
        if (cand.empty()) continue;

        // rows: d(candidate) expanded over the degree |v_k|+2 basis of the early algebra
        FreeModel partial;
        partial.ctx = ectx;
        for (int r = 0; r < k; ++r) {
            // remap the already-chosen differentials into the early context
            Elem img;
            for (const auto& [mono, c] : diff[static_cast<std::size_t>(r)].terms())
                img += Elem::term(ectx, Monomial::from_factors(ectx, mono.factors()), c);
            partial.diff.push_back(img);
        }
        std::vector<Monomial> target = enumerate_basis(ectx, ctx.degree(k) + 2);
        std::map<Monomial, int> tix;
        for (std::size_t i = 0; i < target.size(); ++i) tix.emplace(target[i], static_cast<int>(i));

        LinSystem sys;
        sys.cols = static_cast<int>(target.size());
        for (const Monomial& m : cand) {
            Elem dm = d_elem(partial, Elem::term(ectx, m, 1));
            SparseVec row;
            for (const auto& [mono, c] : dm.terms()) row.entries.emplace_back(tix.at(mono), c);
            std::sort(row.entries.begin(), row.entries.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            sys.rows.push_back(std::move(row));
        }
        SolveResult res = solve(sys);
        if (res.kernel.empty()) continue;
        std::uniform_int_distribution<std::size_t> which(0, res.kernel.size() - 1);
        const SparseVec& combo = res.kernel[which(rng)];
        Elem dv;
        for (const auto& [ci, c] : combo.entries)
            dv += Elem::term(ctx,
                             Monomial::from_factors(ctx, cand[static_cast<std::size_t>(ci)].factors()), c);
        std::uniform_int_distribution<int> scale(1, 2);
        diff[static_cast<std::size_t>(k)] = dv.scaled(scale(rng));
    }
    static int seq = 0;
    return validate_free("rnd" + std::to_string(seq++), ctx, diff);
}

/// Apply a random triangular automorphism sigma(v_k) = lambda v_k + w_k with
/// w_k decomposable in earlier generators, and transport the differential:
/// the result presents the same model on moved generators.
inline FreeModel transported_model(const FreeModel& m, std::mt19937& rng)
{
    std::uniform_int_distribution<int> lam(1, 3);
    std::vector<Elem> sigma;
    for (std::size_t k = 0; k < m.ctx.size(); ++k) {
        Elem img = Elem::gen(m.ctx, static_cast<int>(k)).scaled(frac(lam(rng)));
        std::vector<GenSym> early;
        for (std::size_t r = 0; r < k; ++r) early.push_back(m.ctx.gen(static_cast<int>(r)));
        GenCtx ectx(early);
        Elem w = random_homogeneous(ectx, m.ctx.degree(static_cast<int>(k)), rng);
        for (const auto& [mono, c] : w.terms())
            if (mono.word_length() >= 2)
                img += Elem::term(m.ctx, Monomial::from_factors(m.ctx, mono.factors()), c);
        sigma.push_back(img);
    }
    std::vector<GenSym> syms;
    for (const GenSym& g : m.ctx.gens()) syms.push_back(GenSym{g.name + "_t", g.degree});
    GenCtx nctx(syms);
    std::vector<Elem> tau(m.ctx.size());
    for (std::size_t k = 0; k < m.ctx.size(); ++k) {
        Rational lambda = sigma[k].terms().begin()->second;
        Elem rest = sigma[k];
        rest -= Elem::gen(m.ctx, static_cast<int>(k)).scaled(lambda);
        Elem image = Elem::gen(nctx, static_cast<int>(k));
        image -= substitute(rest, nctx, tau);
        tau[k] = image.scaled(1 / lambda);
    }
    std::vector<Elem> ndiff;
    for (std::size_t k = 0; k < m.ctx.size(); ++k)
        ndiff.push_back(substitute(d_elem(m, sigma[k]), nctx, tau));
    return validate_free(m.name + "_moved", nctx, ndiff);
}

}  // namespace testutil
