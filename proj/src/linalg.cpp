#include "mapspace/linalg.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mapspace {

SparseVec SparseVec::unit(int index, const Rational& c)
{
    SparseVec v;
    if (!rat_zero(c)) v.entries.emplace_back(index, c);
    return v;
}

Rational SparseVec::at(int index) const
{
    auto it = std::lower_bound(entries.begin(), entries.end(), index,
                               [](const auto& e, int i) { return e.first < i; });
    if (it != entries.end() && it->first == index) return it->second;
    return Rational(0);
}

SparseVec sv_scaled(const SparseVec& v, const Rational& c)
{
    SparseVec r;
    if (rat_zero(c)) return r;
    r.entries.reserve(v.entries.size());
    for (const auto& [i, x] : v.entries) {
        Rational p = x * c;
        r.entries.emplace_back(i, p);
    }
    return r;
}

void sv_axpy(SparseVec& y, const Rational& c, const SparseVec& x)
{
    if (rat_zero(c) || x.entries.empty()) return;
    std::vector<std::pair<int, Rational>> out;
    out.reserve(y.entries.size() + x.entries.size());
    std::size_t i = 0, j = 0;
    while (i < y.entries.size() && j < x.entries.size()) {
        if (y.entries[i].first < x.entries[j].first) {
            out.push_back(y.entries[i++]);
        } else if (y.entries[i].first > x.entries[j].first) {
            Rational v = c * x.entries[j].second;
            out.emplace_back(x.entries[j].first, v);
            ++j;
        } else {
            Rational v = y.entries[i].second + c * x.entries[j].second;
            if (!rat_zero(v)) out.emplace_back(y.entries[i].first, v);
            ++i;
            ++j;
        }
    }
    while (i < y.entries.size()) out.push_back(y.entries[i++]);
    while (j < x.entries.size()) {
        Rational v = c * x.entries[j].second;
        out.emplace_back(x.entries[j].first, v);
        ++j;
    }
    y.entries = std::move(out);
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b)
{
    SparseVec r = a;
    sv_axpy(r, 1, b);
    return r;
}

Echelon::Ins Echelon::insert(SparseVec v)
{
    SparseVec combo;
    if (track_) combo = SparseVec::unit(inserted_);
    ++inserted_;

    // eliminate against stored pivots; rows keep row.v = row.combo * inserted
    for (const Row& row : rows_) {
        Rational c = v.at(row.pivot);
        if (rat_zero(c)) continue;
        sv_axpy(v, -c, row.v);
        if (track_) sv_axpy(combo, -c, row.combo);
    }
    if (v.empty()) {
        Ins ins;
        ins.independent = false;
        ins.combo = std::move(combo);
        return ins;
    }

    // normalize to leading coefficient 1
    Rational lead = v.entries.front().second;
    if (lead != 1) {
        Rational inv = 1 / lead;
        v = sv_scaled(v, inv);
        if (track_) combo = sv_scaled(combo, inv);
    }
    int pivot = v.entries.front().first;

    // back-eliminate the new pivot from the stored rows (keeps RREF)
    for (Row& row : rows_) {
        Rational c = row.v.at(pivot);
        if (rat_zero(c)) continue;
        sv_axpy(row.v, -c, v);
        if (track_) sv_axpy(row.combo, -c, combo);
    }

    Row nr;
    nr.v = std::move(v);
    nr.combo = std::move(combo);
    nr.pivot = pivot;
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                [](const Row& r, int p) { return r.pivot < p; });
    rows_.insert(pos, std::move(nr));
    Ins ins;
    ins.independent = true;
    return ins;
}

SparseVec Echelon::reduce(SparseVec v) const
{
    for (const Row& row : rows_) {
        Rational c = v.at(row.pivot);
        if (rat_zero(c)) continue;
        sv_axpy(v, -c, row.v);
    }
    return v;
}

std::optional<SparseVec> Echelon::coords(SparseVec v) const
{
    SparseVec combo;
    for (const Row& row : rows_) {
        Rational c = v.at(row.pivot);
        if (rat_zero(c)) continue;
        sv_axpy(v, -c, row.v);
        sv_axpy(combo, c, row.combo);
    }
    if (!v.empty()) return std::nullopt;
    return combo;
}

std::vector<SparseVec> Echelon::basis() const
{
    std::vector<SparseVec> out;
    out.reserve(rows_.size());
    for (const Row& r : rows_) out.push_back(r.v);
    return out;
}

SolveResult solve(const LinSystem& sys)
{
    SolveResult res{0, {}, {}, Echelon(true)};
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        Echelon::Ins ins = res.ech.insert(sys.rows[i]);
        // a dependent row reduces to zero; its tracked combination (with
        // coefficient 1 on the row itself) is a kernel vector
        if (!ins.independent) res.kernel.push_back(std::move(ins.combo));
    }
    res.rank = res.ech.rank();
    res.image = res.ech.basis();
    return res;
}

void reduce_rows(std::vector<SparseVec>& rows, const Echelon& ech, bool parallel)
{
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(rows.size()); ++i)
            rows[static_cast<std::size_t>(i)] = ech.reduce(rows[static_cast<std::size_t>(i)]);
    } else {
        for (auto& r : rows) r = ech.reduce(r);
    }
}

std::vector<SparseVec> rref(std::vector<SparseVec> rows, bool parallel)
{
    std::vector<SparseVec> done;
    std::size_t n = rows.size();
    std::vector<bool> used(n, false);
    for (;;) {
        // deterministic pivot: leftmost column, then lowest row index
        int best_col = -1;
        std::size_t best_row = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i] || rows[i].empty()) continue;
            int col = rows[i].entries.front().first;
            if (best_col == -1 || col < best_col) {
                best_col = col;
                best_row = i;
            }
        }
        if (best_col == -1) break;
        used[best_row] = true;
        SparseVec pivot = sv_scaled(rows[best_row], 1 / rows[best_row].entries.front().second);
        rows[best_row].entries.clear();

        auto eliminate = [&](SparseVec& r) {
            Rational c = r.at(best_col);
            if (!rat_zero(c)) sv_axpy(r, -c, pivot);
        };
        if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
            for (long long i = 0; i < static_cast<long long>(n); ++i) {
                if (!used[static_cast<std::size_t>(i)]) eliminate(rows[static_cast<std::size_t>(i)]);
            }
            for (auto& d : done) eliminate(d);
        } else {
            for (std::size_t i = 0; i < n; ++i)
                if (!used[i]) eliminate(rows[i]);
            for (auto& d : done) eliminate(d);
        }
        done.push_back(std::move(pivot));
    }
    std::sort(done.begin(), done.end(), [](const SparseVec& a, const SparseVec& b) {
        return a.entries.front().first < b.entries.front().first;
    });
    return done;
}

}  // namespace mapspace
