#include "mapspace/cohomology.hpp"

#include <algorithm>

#include "mapspace/errors.hpp"

namespace mapspace {

FreeView::FreeView(const FreeModel& m, int N) : m_(&m), N_(N)
{
    bases_.resize(static_cast<std::size_t>(N) + 2);
    index_.resize(static_cast<std::size_t>(N) + 2);
    for (int n = 0; n <= N + 1; ++n) {
        bases_[static_cast<std::size_t>(n)] = enumerate_basis(m.ctx, n);
        auto& ix = index_[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < bases_[static_cast<std::size_t>(n)].size(); ++i)
            ix.emplace(bases_[static_cast<std::size_t>(n)][i], static_cast<int>(i));
    }
}

int FreeView::dim(int n) const
{
    if (n < 0 || n > N_ + 1) return 0;
    return static_cast<int>(bases_[static_cast<std::size_t>(n)].size());
}

std::string FreeView::label(int n, int i) const
{
    return bases_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].str(m_->ctx);
}

SparseVec FreeView::encode(int n, const Elem& x) const
{
    SparseVec v;
    const auto& ix = index_[static_cast<std::size_t>(n)];
    for (const auto& [mono, c] : x.terms()) {
        auto it = ix.find(mono);
        if (it == ix.end())
            throw ValidationError(Err::DegreeMismatch, "element not homogeneous of degree " +
                                                           std::to_string(n));
        v.entries.emplace_back(it->second, c);
    }
    std::sort(v.entries.begin(), v.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

Elem FreeView::decode(int n, const SparseVec& v) const
{
    Elem x;
    for (const auto& [i, c] : v.entries)
        x += Elem::term(m_->ctx, bases_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], c);
    return x;
}

SparseVec FreeView::diff(int n, int i) const
{
    Elem d = d_elem(*m_, Elem::term(m_->ctx, bases_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], 1));
    return encode(n + 1, d);
}

SparseVec FreeView::mul(int n1, const SparseVec& u, int n2, const SparseVec& v) const
{
    Elem p = mapspace::mul(m_->ctx, decode(n1, u), decode(n2, v));
    return encode(n1 + n2, p);
}

FiniteView::FiniteView(const FiniteAlgebra& a, int N) : a_(&a), N_(N)
{
    idx_.resize(static_cast<std::size_t>(N) + 2);
    for (int n = 1; n <= N + 1; ++n) idx_[static_cast<std::size_t>(n)] = a.indices_of_degree(n);
}

int FiniteView::dim(int n) const
{
    if (n == 0) return 1;
    if (n < 0 || n > N_ + 1) return 0;
    return static_cast<int>(idx_[static_cast<std::size_t>(n)].size());
}

std::string FiniteView::label(int n, int i) const
{
    if (n == 0) return "1";
    return a_->labels[static_cast<std::size_t>(idx_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)])];
}

SparseVec FiniteView::to_global(int n, const SparseVec& local) const
{
    SparseVec g;
    for (const auto& [i, c] : local.entries)
        g.entries.emplace_back(idx_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], c);
    std::sort(g.entries.begin(), g.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return g;
}

SparseVec FiniteView::to_local(int n, const SparseVec& global) const
{
    const auto& ids = idx_[static_cast<std::size_t>(n)];
    SparseVec l;
    for (const auto& [i, c] : global.entries) {
        auto it = std::lower_bound(ids.begin(), ids.end(), i);
        if (it == ids.end() || *it != i)
            throw ValidationError(Err::DegreeMismatch, "vector not homogeneous of degree " +
                                                           std::to_string(n));
        l.entries.emplace_back(static_cast<int>(it - ids.begin()), c);
    }
    return l;
}

SparseVec FiniteView::diff(int n, int i) const
{
    if (n == 0) return {};
    int gi = idx_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    const SparseVec& d = a_->diff[static_cast<std::size_t>(gi)];
    if (d.empty()) return {};
    return to_local(n + 1, d);
}

SparseVec FiniteView::mul(int n1, const SparseVec& u, int n2, const SparseVec& v) const
{
    if (n1 == 0 || n2 == 0) {
        // unit line: multiplication by a scalar multiple of 1
        const SparseVec& unit_side = (n1 == 0) ? u : v;
        const SparseVec& other = (n1 == 0) ? v : u;
        Rational c = unit_side.empty() ? Rational(0) : unit_side.entries.front().second;
        return sv_scaled(other, c);
    }
    SparseVec p = alg_mul(*a_, to_global(n1, u), to_global(n2, v));
    if (p.empty()) return {};
    return to_local(n1 + n2, p);
}

CupAnalysis cup_analysis(const FiniteAlgebra& a)
{
    CupAnalysis ca;
    const int top = a.top_degree();
    ca.boundary_ech.assign(static_cast<std::size_t>(top) + 2, Echelon{});

    // class representatives per degree, global coordinates
    for (int n = 1; n <= top; ++n) {
        std::vector<int> idx = a.indices_of_degree(n);
        Echelon ech(true);
        std::vector<SparseVec> cocycles;
        for (std::size_t local = 0; local < idx.size(); ++local) {
            int i = idx[local];
            Echelon::Ins ins = ech.insert(a.diff[static_cast<std::size_t>(i)]);
            if (ins.independent) {
                ca.boundary_ech[static_cast<std::size_t>(n) + 1].insert(
                    a.diff[static_cast<std::size_t>(i)]);
            } else {
                SparseVec z;
                for (const auto& [lj, c] : ins.combo.entries)
                    sv_axpy(z, c, SparseVec::unit(idx[static_cast<std::size_t>(lj)]));
                cocycles.push_back(std::move(z));
            }
        }
        for (SparseVec& z : cocycles) {
            SparseVec copy = z;
            if (ca.boundary_ech[static_cast<std::size_t>(n)].insert(std::move(copy)).independent) {
                // the insert above seeds the echelon with the rep as well; rebuild it
                ca.reps.push_back(std::move(z));
                ca.rep_degree.push_back(n);
            }
        }
    }

    // The boundary echelons were polluted by the rep insertions; rebuild them
    // cleanly for class-nonzero tests below.
    for (auto& e : ca.boundary_ech) e = Echelon{};
    for (int n = 1; n <= top; ++n) {
        std::vector<int> idx = a.indices_of_degree(n);
        for (int i : idx)
            if (!a.diff[static_cast<std::size_t>(i)].empty())
                ca.boundary_ech[static_cast<std::size_t>(n) + 1].insert(a.diff[static_cast<std::size_t>(i)]);
    }

    if (ca.reps.empty()) {
        ca.cup = 0;
        return ca;
    }

    // level 1
    std::vector<CupAnalysis::Member> level;
    for (std::size_t r = 0; r < ca.reps.size(); ++r)
        level.push_back({ca.reps[r], {static_cast<int>(r)}, ca.rep_degree[r]});
    ca.levels.push_back(level);
    ca.cup = 1;

    // higher levels: span of products of (k+1) classes, nonzero in H
    while (true) {
        std::vector<CupAnalysis::Member> next;
        std::vector<Echelon> span(static_cast<std::size_t>(top) + 1);
        for (int n = 1; n <= top; ++n) {
            // seed with boundaries so that membership means nonzero class
            for (const SparseVec& b : ca.boundary_ech[static_cast<std::size_t>(n)].basis())
                span[static_cast<std::size_t>(n)].insert(b);
        }
        for (const CupAnalysis::Member& m : ca.levels.back()) {
            for (std::size_t r = 0; r < ca.reps.size(); ++r) {
                int n = m.degree + ca.rep_degree[r];
                if (n > top) continue;
                SparseVec prod = alg_mul(a, m.vec, ca.reps[r]);
                if (prod.empty()) continue;
                if (span[static_cast<std::size_t>(n)].insert(prod).independent) {
                    CupAnalysis::Member nm;
                    nm.vec = std::move(prod);
                    nm.factors = m.factors;
                    nm.factors.push_back(static_cast<int>(r));
                    nm.degree = n;
                    next.push_back(std::move(nm));
                }
            }
        }
        if (next.empty()) break;
        ca.levels.push_back(std::move(next));
        ca.cup = static_cast<int>(ca.levels.size());
    }
    return ca;
}

int cup_length(const FiniteAlgebra& a)
{
    return cup_analysis(a).cup;
}

int nilpotency(const FiniteAlgebra& a)
{
    const int top = a.top_degree();
    if (a.dim() == 0) return 0;

    // level k: span of products of k positive-degree elements, per degree
    std::vector<SparseVec> level;
    for (int i = 0; i < a.dim(); ++i) level.push_back(SparseVec::unit(i));
    int p = 1;
    while (true) {
        std::vector<Echelon> span(static_cast<std::size_t>(top) + 1);
        std::vector<SparseVec> next;
        for (const SparseVec& u : level) {
            for (int i = 0; i < a.dim(); ++i) {
                SparseVec prod = alg_mul(a, u, SparseVec::unit(i));
                if (prod.empty()) continue;
                int n = a.degrees[static_cast<std::size_t>(prod.entries.front().first)];
                if (span[static_cast<std::size_t>(n)].insert(prod).independent)
                    next.push_back(std::move(prod));
            }
        }
        if (next.empty()) break;
        level = std::move(next);
        ++p;
    }
    return p;
}

FreenessVerdict freeness_check(const CohomReport& rep, int N)
{
    FreenessVerdict v;
    std::vector<std::pair<int, int>> gens;
    for (int n = 1; n <= N; ++n) {
        const CohomDegree& cd = rep.degs[static_cast<std::size_t>(n)];
        int g = cd.betti - cd.decomp_dim;
        if (g > 0) gens.emplace_back(n, g);
    }
    std::vector<Integer> predicted = free_hilbert_series(gens, N);
    for (int n = 0; n <= N; ++n) {
        Integer actual(rep.degs[static_cast<std::size_t>(n)].betti);
        if (predicted[static_cast<std::size_t>(n)] != actual) {
            v.is_free = false;
            v.first_failure = n;
            v.generators = std::move(gens);
            return v;
        }
    }
    v.is_free = true;
    v.generators = std::move(gens);
    return v;
}

}  // namespace mapspace
