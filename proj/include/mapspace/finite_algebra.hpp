#pragma once

#include <map>
#include <string>
#include <vector>

#include "mapspace/linalg.hpp"

namespace mapspace {

/// A finite-dimensional cdga given by a homogeneous basis of its positive part
/// (the unit spans degree 0 and is implicit), structure constants and a
/// degree-+1 differential matrix. Produced by validate_finite only.
struct FiniteAlgebra {
    std::string name;
    std::vector<std::string> labels;  // basis of A^+
    std::vector<int> degrees;         // all >= 1
    // mul[i][j] = a_i * a_j expanded over the A^+ basis (products of positive
    // elements stay positive)
    std::vector<std::vector<SparseVec>> mul;
    std::vector<SparseVec> diff;      // d(a_i)

    int dim() const { return static_cast<int>(labels.size()); }
    /// Top degree with a nonzero basis element; 0 when A^+ = 0.
    int top_degree() const;
    std::vector<int> indices_of_degree(int n) const;
    std::string vec_str(const SparseVec& v) const;
};

/// Raw input for validate_finite. Missing products default to zero; when only
/// one of (i,j)/(j,i) is present the other is filled in by the Koszul rule.
struct FiniteAlgebraSpec {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::map<std::pair<int, int>, SparseVec> products;
    std::map<int, SparseVec> diff;
};

/// Exhaustive check of unit/associativity/graded commutativity/Leibniz/d^2 on
/// all basis pairs and triples.
FiniteAlgebra validate_finite(const FiniteAlgebraSpec& spec);

/// Bilinear product of two coordinate vectors over the A^+ basis.
SparseVec alg_mul(const FiniteAlgebra& a, const SparseVec& u, const SparseVec& v);
SparseVec alg_diff(const FiniteAlgebra& a, const SparseVec& u);

// Standard algebras.
FiniteAlgebra truncated_poly(int deg, int height);            // Q[x]/x^height, |x| = deg
FiniteAlgebra trivial_products(const std::vector<int>& degrees);
FiniteAlgebra sphere_algebra(int n);                          // one class, square zero
FiniteAlgebra tensor_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b);

}  // namespace mapspace
