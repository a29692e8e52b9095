#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mapspace/rational.hpp"

namespace mapspace {

/// Sparse exact vector: entries sorted by index, no zeros stored.
struct SparseVec {
    std::vector<std::pair<int, Rational>> entries;

    bool empty() const { return entries.empty(); }
    static SparseVec unit(int index, const Rational& c = 1);
    Rational at(int index) const;
    bool operator==(const SparseVec& o) const { return entries == o.entries; }
};

SparseVec sv_scaled(const SparseVec& v, const Rational& c);
void sv_axpy(SparseVec& y, const Rational& c, const SparseVec& x);  // y += c*x
SparseVec sv_add(const SparseVec& a, const SparseVec& b);

/// Incrementally maintained reduced row echelon form over Q with deterministic
/// leftmost pivoting. Optionally tracks, for every stored row, its expression
/// as a combination of the vectors passed to insert(), which yields kernel
/// vectors and a coordinate solver.
class Echelon {
public:
    explicit Echelon(bool track_combos = false) : track_(track_combos) {}

    struct Ins {
        bool independent = false;
        // valid when tracking and dependent: v = sum combo[j] * inserted[j]
        SparseVec combo;
    };

    Ins insert(SparseVec v);

    /// Residue of v after eliminating against the stored rows (no insertion).
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    /// Coordinates of v over the inserted vectors, if v lies in their span.
    /// Requires tracking.
    std::optional<SparseVec> coords(SparseVec v) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    /// RREF rows in pivot order; a canonical basis of the row space.
    std::vector<SparseVec> basis() const;

private:
    struct Row {
        SparseVec v;
        SparseVec combo;
        int pivot = -1;
    };
    std::vector<Row> rows_;  // sorted by pivot column
    bool track_ = false;
    int inserted_ = 0;
};

/// A finite sparse matrix given by rows; row i is the image of the i-th input
/// basis vector, expressed over `cols` output coordinates.
struct LinSystem {
    int cols = 0;
    std::vector<SparseVec> rows;
};

/// Exact kernel/image data of a LinSystem plus a coordinate solver for
/// membership queries against the row space.
struct SolveResult {
    int rank = 0;
    std::vector<SparseVec> kernel;  // basis of { x : sum x_i row_i = 0 }
    std::vector<SparseVec> image;   // RREF basis of the row space
    Echelon ech;                    // tracking echelon over the original rows

    std::optional<SparseVec> coordinates(const SparseVec& target) const { return ech.coords(target); }
};

SolveResult solve(const LinSystem& sys);

/// Batch-reduce rows against a fixed echelon. The OpenMP kernel; rows are
/// independent so parallel and serial results are identical.
void reduce_rows(std::vector<SparseVec>& rows, const Echelon& ech, bool parallel);

/// Full reduced row echelon form of the given rows. Deterministic pivoting; the
/// parallel flag switches the elimination inner loop to the OpenMP kernel and
/// never changes the result.
std::vector<SparseVec> rref(std::vector<SparseVec> rows, bool parallel = false);

}  // namespace mapspace
