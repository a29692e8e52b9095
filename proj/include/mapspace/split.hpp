#pragma once

#include <string>
#include <vector>

#include "mapspace/finite_algebra.hpp"

namespace mapspace {

/// The h/e/b partition of a new homogeneous basis of A^+: the h are cocycle
/// lifts of a reduced-cohomology basis, the e span a complement of the
/// cocycles, and b_j = d(e_j). Entry order is the h block, then the e block,
/// then the b block (b[j] is the partner of e[j]); within a block entries are
/// sorted by degree, then by discovery under leftmost-lowest pivoting.
struct BasisSplit {
    struct Entry {
        char kind = 'h';  // 'h' | 'e' | 'b'
        int degree = 0;
        SparseVec vec;    // coordinates over the original A^+ basis
        std::string label;
        int partner = -1;  // e <-> b pairing, -1 for h
    };

    std::vector<Entry> entries;
    int h_count = 0, e_count = 0, b_count = 0;

    int size() const { return static_cast<int>(entries.size()); }

    /// Coordinates of an original-basis vector over the split basis.
    SparseVec to_split(const SparseVec& orig) const;
    /// Inverse of to_split.
    SparseVec to_orig(const SparseVec& split_coords) const;

    // built by split_basis
    struct DegreeSolver {
        Echelon ech{true};
        std::vector<int> entry_ids;
    };
    std::vector<DegreeSolver> solvers;  // indexed by degree
    std::vector<int> degree_of_orig;    // degrees of the original basis
};

/// Deterministic basis split: boundaries from the image of d, cocycle lifts
/// completing them, complement chosen by leftmost pivoting.
BasisSplit split_basis(const FiniteAlgebra& a);

/// The algebra structure rewritten in split coordinates; the differential is
/// the simple pairing e_j -> b_j there.
struct SplitAlgebra {
    FiniteAlgebra base;
    BasisSplit split;
    std::vector<std::vector<SparseVec>> mul;  // products in split coordinates
    std::vector<SparseVec> diff;              // d in split coordinates

    int degree(int s) const { return split.entries[static_cast<std::size_t>(s)].degree; }
    char kind(int s) const { return split.entries[static_cast<std::size_t>(s)].kind; }
    int dim() const { return split.size(); }
};

SplitAlgebra make_split_algebra(const FiniteAlgebra& a);

}  // namespace mapspace
