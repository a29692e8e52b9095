#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mapspace/haefliger.hpp"

namespace mapspace {

/// Result of quotienting a mapping model by the acyclic ideal on the surviving
/// e/b generators of a well-order prefix. The quotient is taken along the
/// D-closure of the b-generators (always a differential ideal); whether the
/// plain e/b-generated ideal was already D-stable is reported separately.
struct KillResult {
    FreeModel reduced;
    std::vector<ZGenInfo> reduced_info;       // per reduced ordinal
    std::vector<std::pair<int, int>> killed;  // (b, e) pairs, truncated-model ordinals
    bool literal_ideal_stable = true;
    bool quasi_iso = true;                    // Betti numbers agree through the bound
    std::vector<int> betti_before, betti_after;
};

/// Kill the surviving pairs (b^j x v_s, e^j x v_s) for the first k generators
/// of V (k = -1 means all), verifying Betti preservation through N.
KillResult kill_acyclic(const MapModel& mm, int k_prefix, int N, bool check_betti = true);

/// Same with an arbitrary predicate on the Y-generator ordinal.
KillResult kill_acyclic_if(const MapModel& mm, const std::function<bool(int)>& kill_v, int N,
                           bool check_betti = true);

/// The nonfreeness witness of the converse direction: the lowest-degree y with
/// a usable word-length-r differential component, a maximal-degree nonzero
/// product of cocycle classes, its dual functional, and the obstruction.
struct Witness {
    std::string y_name;
    int y_degree = 0;
    int r = 0;
    std::vector<int> omega_factors;  // h-entry indices in the split basis
    std::string omega_pretty;
    int omega_degree = 0;
    std::string omega_dual_label;
    Rational omega_dual_scale;       // <omega'; omega> = 1
    int obstruction_degree = 0;
    std::string obstruction_pretty;  // nonzero word-length-r component of D(omega' x y)
};

Witness nonfree_witness(const FiniteAlgebra& x, const FreeModel& y, int N = 20);

enum class PipelineBranch { TheoremFree, ConverseWitness, DirectFallback };

struct PipelineReport {
    PipelineBranch branch = PipelineBranch::DirectFallback;
    bool is_free = false;
    bool degree_bounded = false;  // verdict certified only through N
    int first_failure = -1;
    std::vector<std::pair<int, int>> generators;  // (degree, count)
    std::optional<Witness> witness;
    int cup = 0, dl = 0, conn = 0, dim = 0;
    std::string diagnostic;  // nonempty when the theorem branch downgraded
};

/// Theorem machinery: cup0 < dl runs the iterated acyclic killing and asserts
/// the reduced differential vanishes; cup0 >= dl with dim <= conn produces the
/// witness; otherwise falls back to direct cohomology plus freeness_check.
PipelineReport freeness_pipeline(const FiniteAlgebra& x, const FreeModel& y, int N);

/// H(n) test on the canonical doubling morphism phi(v) = v' + v'' into
/// (Wedge V' (x) Wedge V'')/I_r. True iff r <= dl(y).
bool hn_check(const FreeModel& y, int r);

struct HnStructure {
    GenCtx doubled;              // v'_0..v'_{n-1}, v''_0..v''_{n-1}
    int r = 0;
    std::vector<Elem> phi;       // phi(v) = v' + v'' per Y ordinal
    std::vector<Elem> phi_dv;    // phi(dv) reduced modulo I_r
    bool morphism = false;       // all phi_dv vanish
};

HnStructure hn_structure(const FreeModel& y, int r);

/// One stage of the principal-ideal tower.
struct TowerStage {
    int k = 0;
    int power = 0;          // fiber realizes (A^+)^power / (A^+)^{previous power}
    bool is_base = false;   // the terminal quotient A/I_s
    int fiber_dim = 0;      // vector-space dimension of the subquotient
    std::vector<int> fiber_z_degrees;  // generator degrees of the reduced fiber model
    bool fiber_zero_differential = false;
    bool fiber_quasi_iso = true;
    std::vector<int> quotient_z_degrees;  // stage model Wedge((A+/I_k)^v x V) generators
};

struct TowerReport {
    int nilpotency = 0;
    int m_eff = 0;  // nilpotency + 1
    int r = 0;      // dl(y)
    int s = 0;      // integral part of log_r(m_eff)
    bool hypothesis_met = true;  // dim(x) <= conn(y)
    std::vector<TowerStage> stages;
    int achieved = 0;            // nonempty stages in the verified chain
    bool matches_paper_s = false;
};

/// The product-length power-ideal chain I_k = (A^+)^{floor(m_eff/r^k)+1}, its
/// quotient map models, and the per-stage fiber models, each reduced and
/// checked for zero differential.
TowerReport postnikov_tower(const FiniteAlgebra& x, const FreeModel& y, int N);

}  // namespace mapspace
