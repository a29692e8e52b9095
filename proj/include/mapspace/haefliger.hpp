#pragma once

#include <map>
#include <string>
#include <vector>

#include "mapspace/cohomology.hpp"
#include "mapspace/free_model.hpp"
#include "mapspace/split.hpp"

namespace mapspace {

/// Dual basis element a^s of B = (A^+)^v, graded by (A^v)^{-n} = Hom(A^n, Q).
struct DualGen {
    std::string label;
    char kind = 'h';
    int degree = 0;  // negative
};

std::vector<DualGen> dualize(const SplitAlgebra& salg);

/// One generator a^s (x) v of the untruncated bigraded space B (x) V.
struct ZGenInfo {
    int split_index = -1;  // index into the split entries
    char kind = 'h';
    int v_ord = -1;        // generator ordinal in the Y model
    int degree = 0;        // |v| - |a_s|
    bool survives = false; // the degree table: b >= 1, e >= 2, h >= 1
    std::string name;      // provenance-encoding identifier, e.g. h_a5__y15
};

/// Element of A (x) Wedge(B (x) V): A-part index (0 = unit, s+1 = split entry s)
/// times a word in the Z generators.
struct TensorElem {
    std::map<std::pair<int, Monomial>, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    void add(int a_index, const Monomial& m, const Rational& c);
    bool operator==(const TensorElem& o) const { return terms == o.terms; }
};

/// The truncated mapping-space model (Wedge Z, D) together with the
/// untruncated solved differential it was cut from.
struct MapModel {
    std::string x_name, y_name;
    FreeModel y;
    SplitAlgebra salg;

    std::vector<ZGenInfo> zinfo;    // untruncated generators, solving order
    GenCtx zctx;                    // context over all of them
    std::vector<Elem> d_full;       // the unique differential, untruncated

    std::vector<int> survivors;     // zctx ordinals, ascending
    std::vector<int> full_to_model; // -1 when killed by the truncation
    std::vector<int> model_to_full;
    FreeModel model;                // the truncated model; valid through `bound`
    std::vector<ZGenInfo> model_info;

    int bound = 0;
    std::vector<int> used_v;  // Y ordinals with |v| <= bound + 1
    std::vector<int> v_pos;   // Y ordinal -> position in used_v, or -1

    int zord(int vpos, int split_index) const { return vpos * salg.dim() + split_index; }
};

TensorElem t_mul(const MapModel& mm, const TensorElem& a, const TensorElem& b);

/// phi(v) = sum_s a_s (x) (a^s (x) v) for a Y generator; zero when A^+ = 0.
TensorElem phi_gen(const MapModel& mm, int v_ord);

/// Multiplicative extension of phi to any element of the Y model.
TensorElem apply_phi(const MapModel& mm, const Elem& x);

/// The tensor-product differential d_A (x) 1 + (-1)^{|a|} 1 (x) D applied with
/// the untruncated solved D.
TensorElem t_diff(const MapModel& mm, const TensorElem& t);

/// Builds the Haefliger model of the pointed mapping space from a finite model
/// of X and a minimal model of Y, solving D generator by generator and
/// truncating per the degree table. Y generators above degree N+1 are ignored.
MapModel build_map_model(const FiniteAlgebra& x, const FreeModel& y, int N);

/// Symbolic check that phi intertwines the differentials on every used Y
/// generator, in the untruncated algebra.
bool verify_morphism(const MapModel& mm);

}  // namespace mapspace
