#include "mapspace/basis.hpp"

#include <algorithm>

#include "mapspace/errors.hpp"

namespace mapspace {

namespace {

void enumerate_rec(const GenCtx& ctx, int next_ordinal, int remaining,
                   std::vector<Monomial::Factor>& acc, std::vector<Monomial>& out)
{
    if (remaining == 0) {
        out.push_back(Monomial::from_factors(ctx, acc));
        return;
    }
    if (next_ordinal >= static_cast<int>(ctx.size())) return;
    int d = ctx.degree(next_ordinal);
    int max_exp = ctx.odd(next_ordinal) ? 1 : remaining / d;
    for (int e = 0; e <= max_exp && e * d <= remaining; ++e) {
        if (e > 0) acc.emplace_back(next_ordinal, e);
        enumerate_rec(ctx, next_ordinal + 1, remaining - e * d, acc, out);
        if (e > 0) acc.pop_back();
    }
}

}  // namespace

std::vector<Monomial> enumerate_basis(const GenCtx& ctx, int degree)
{
    for (const GenSym& g : ctx.gens())
        if (g.degree <= 0)
            throw ValidationError(Err::NonPositiveDegreeGenerator,
                                  "generator " + g.name + " has degree " + std::to_string(g.degree));
    if (degree < 0) return {};
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> acc;
    enumerate_rec(ctx, 0, degree, acc, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Integer> free_hilbert_series(const std::vector<std::pair<int, int>>& gen_degree_counts,
                                         int max_degree)
{
    std::vector<Integer> coeff(static_cast<std::size_t>(max_degree) + 1, 0);
    coeff[0] = 1;
    for (const auto& [d, count] : gen_degree_counts) {
        if (d <= 0) throw ValidationError(Err::NonPositiveDegreeGenerator, "degree must be positive");
        for (int c = 0; c < count; ++c) {
            if (d & 1) {
                // multiply by (1 + t^d)
                for (int n = max_degree; n >= d; --n) coeff[n] += coeff[n - d];
            } else {
                // multiply by 1/(1 - t^d)
                for (int n = d; n <= max_degree; ++n) coeff[n] += coeff[n - d];
            }
        }
    }
    return coeff;
}

std::vector<Integer> free_hilbert_series(const GenCtx& ctx, int max_degree)
{
    std::vector<std::pair<int, int>> degs;
    for (const GenSym& g : ctx.gens()) degs.emplace_back(g.degree, 1);
    return free_hilbert_series(degs, max_degree);
}

}  // namespace mapspace
