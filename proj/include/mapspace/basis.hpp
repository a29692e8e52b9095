#pragma once

#include <vector>

#include "mapspace/monomial.hpp"
#include "mapspace/rational.hpp"

namespace mapspace {

/// The complete canonical-form monomial basis of the free graded-commutative
/// algebra on ctx in one degree, sorted by the monomial order. All generator
/// degrees must be >= 1 (NonPositiveDegreeGenerator otherwise).
std::vector<Monomial> enumerate_basis(const GenCtx& ctx, int degree);

/// Coefficients 0..max_degree of prod_even (1-t^d)^-1 * prod_odd (1+t^d) for
/// the given (degree, count) generator multiset; the odd/even split follows
/// degree parity.
std::vector<Integer> free_hilbert_series(const std::vector<std::pair<int, int>>& gen_degree_counts,
                                         int max_degree);

std::vector<Integer> free_hilbert_series(const GenCtx& ctx, int max_degree);

}  // namespace mapspace
