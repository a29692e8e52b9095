#pragma once

#include <map>
#include <string>
#include <vector>

#include "mapspace/basis.hpp"
#include "mapspace/elem.hpp"
#include "mapspace/finite_algebra.hpp"
#include "mapspace/free_model.hpp"
#include "mapspace/linalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mapspace {

/// Per-degree cohomology data. Coordinates are local to that degree's basis.
struct CohomDegree {
    int dim = 0;
    int betti = 0;
    int decomp_dim = 0;                 // dim of (H^+ . H^+) in this degree
    std::vector<SparseVec> reps;        // representative cocycles
    std::vector<std::string> labels;    // basis labels, for rendering
    std::vector<SparseVec> boundaries;  // RREF basis of im(d) in this degree
};

struct CohomReport {
    int max_degree = 0;
    std::vector<CohomDegree> degs;  // size max_degree + 1

    std::vector<int> betti() const
    {
        std::vector<int> b;
        b.reserve(degs.size());
        for (const auto& d : degs) b.push_back(d.betti);
        return b;
    }
};

/// Degreewise view of a free cdga: enumerated monomial bases through N+1.
class FreeView {
public:
    FreeView(const FreeModel& m, int N);

    int dim(int n) const;
    std::string label(int n, int i) const;
    SparseVec diff(int n, int i) const;
    SparseVec mul(int n1, const SparseVec& u, int n2, const SparseVec& v) const;

    SparseVec encode(int n, const Elem& x) const;
    Elem decode(int n, const SparseVec& v) const;
    const std::vector<Monomial>& basis(int n) const { return bases_[static_cast<std::size_t>(n)]; }
    const FreeModel& model() const { return *m_; }

private:
    const FreeModel* m_;
    int N_;
    std::vector<std::vector<Monomial>> bases_;
    std::vector<std::map<Monomial, int>> index_;
};

/// Degreewise view of a finite cdga; degree 0 is the unit line.
class FiniteView {
public:
    FiniteView(const FiniteAlgebra& a, int N);

    int dim(int n) const;
    std::string label(int n, int i) const;
    SparseVec diff(int n, int i) const;
    SparseVec mul(int n1, const SparseVec& u, int n2, const SparseVec& v) const;

    SparseVec to_global(int n, const SparseVec& local) const;
    SparseVec to_local(int n, const SparseVec& global) const;

private:
    const FiniteAlgebra* a_;
    int N_;
    std::vector<std::vector<int>> idx_;
};

/// Exact degreewise cohomology through degree N with representatives and
/// decomposable dimensions. Independent degrees run as parallel tasks when
/// `parallel` is set; the serial path is the reference and the results are
/// identical.
template <class View>
CohomReport cohomology(const View& view, int N, bool parallel = true)
{
    (void)parallel;  // no-op without OpenMP
    CohomReport rep;
    rep.max_degree = N;
    rep.degs.assign(static_cast<std::size_t>(N) + 1, {});

    std::vector<std::vector<SparseVec>> kernels(static_cast<std::size_t>(N) + 1);
    std::vector<std::vector<SparseVec>> images(static_cast<std::size_t>(N) + 1);

    // phase 1: per-degree kernel/image linear algebra (independent tasks)
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int n = 0; n <= N; ++n) {
        LinSystem sys;
        sys.cols = view.dim(n + 1);
        const int d = view.dim(n);
        sys.rows.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) sys.rows.push_back(view.diff(n, i));
        SolveResult res = solve(sys);
        kernels[static_cast<std::size_t>(n)] = std::move(res.kernel);
        images[static_cast<std::size_t>(n)] = std::move(res.image);
    }

    // phase 2: pick class representatives extending the boundary space
    for (int n = 0; n <= N; ++n) {
        CohomDegree& cd = rep.degs[static_cast<std::size_t>(n)];
        cd.dim = view.dim(n);
        cd.labels.reserve(static_cast<std::size_t>(cd.dim));
        for (int i = 0; i < cd.dim; ++i) cd.labels.push_back(view.label(n, i));
        Echelon ech;
        if (n > 0)
            for (const SparseVec& b : images[static_cast<std::size_t>(n) - 1]) {
                cd.boundaries.push_back(b);
                ech.insert(b);
            }
        for (const SparseVec& z : kernels[static_cast<std::size_t>(n)]) {
            SparseVec copy = z;
            if (ech.insert(std::move(copy)).independent) cd.reps.push_back(z);
        }
        cd.betti = static_cast<int>(cd.reps.size());
    }

    // phase 3: decomposable dimensions (products of positive classes)
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int n = 2; n <= N; ++n) {
        CohomDegree& cd = rep.degs[static_cast<std::size_t>(n)];
        Echelon ech;
        for (const SparseVec& b : cd.boundaries) ech.insert(b);
        int base = ech.rank();
        for (int n1 = 1; n1 <= n - 1; ++n1) {
            int n2 = n - n1;
            if (n2 < 1) continue;
            for (const SparseVec& u : rep.degs[static_cast<std::size_t>(n1)].reps)
                for (const SparseVec& v : rep.degs[static_cast<std::size_t>(n2)].reps)
                    ech.insert(view.mul(n1, u, n2, v));
        }
        cd.decomp_dim = ech.rank() - base;
    }
    return rep;
}

/// Maximal length of a nonzero product of positive-degree cohomology classes;
/// 1 when all such products vanish but H^+ != 0, and 0 only if H^+ = 0.
int cup_length(const FiniteAlgebra& a);

/// Largest p with (A^+)^p != 0, computed on the algebra itself.
int nilpotency(const FiniteAlgebra& a);

struct FreenessVerdict {
    bool is_free = false;
    int first_failure = -1;                      // least degree where dims diverge
    std::vector<std::pair<int, int>> generators;  // (degree, count) with count > 0
};

/// Compares the Betti numbers against the free graded-commutative algebra on
/// the per-degree indecomposables g_n = betti_n - decomp_n, through degree N.
FreenessVerdict freeness_check(const CohomReport& rep, int N);

// Internals shared with the reduction module: products of cohomology classes
// by level, with factor tracking for witness extraction. Coordinates are
// global over the A^+ basis.
struct CupAnalysis {
    struct Member {
        SparseVec vec;
        std::vector<int> factors;  // indices into reps
        int degree = 0;
    };
    std::vector<SparseVec> reps;             // level-1 class representatives
    std::vector<int> rep_degree;
    std::vector<std::vector<Member>> levels;  // levels[k-1] spans image of (H^+)^k
    int cup = 0;
    std::vector<Echelon> boundary_ech;        // per degree, for class-nonzero tests
};

CupAnalysis cup_analysis(const FiniteAlgebra& a);

}  // namespace mapspace
