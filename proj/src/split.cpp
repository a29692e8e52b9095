#include "mapspace/split.hpp"

#include <algorithm>

#include "mapspace/errors.hpp"

namespace mapspace {

SparseVec BasisSplit::to_split(const SparseVec& orig) const
{
    SparseVec out;
    // split the vector by degree and solve each homogeneous piece
    std::vector<std::pair<int, SparseVec>> pieces;
    for (const auto& [i, c] : orig.entries) {
        int d = degree_of_orig[static_cast<std::size_t>(i)];
        auto it = std::find_if(pieces.begin(), pieces.end(), [&](const auto& p) { return p.first == d; });
        if (it == pieces.end()) {
            pieces.emplace_back(d, SparseVec{});
            it = pieces.end() - 1;
        }
        sv_axpy(it->second, c, SparseVec::unit(i));
    }
    for (const auto& [d, piece] : pieces) {
        const DegreeSolver& sol = solvers[static_cast<std::size_t>(d)];
        auto coords = sol.ech.coords(piece);
        if (!coords)
            throw ValidationError(Err::InvalidParameter, "vector outside the split basis span");
        for (const auto& [local, c] : coords->entries)
            sv_axpy(out, c, SparseVec::unit(sol.entry_ids[static_cast<std::size_t>(local)]));
    }
    return out;
}

SparseVec BasisSplit::to_orig(const SparseVec& split_coords) const
{
    SparseVec out;
    for (const auto& [s, c] : split_coords.entries)
        sv_axpy(out, c, entries[static_cast<std::size_t>(s)].vec);
    return out;
}

BasisSplit split_basis(const FiniteAlgebra& a)
{
    BasisSplit sp;
    sp.degree_of_orig = a.degrees;
    const int top = a.top_degree();

    struct Pending {
        int degree;
        SparseVec vec;
        int src = -1;  // original basis index when the vector is a pure unit
    };
    std::vector<Pending> e_pend, b_pend, h_pend;
    std::vector<std::vector<SparseVec>> boundaries(static_cast<std::size_t>(top) + 2);
    std::vector<std::vector<Pending>> cocycles(static_cast<std::size_t>(top) + 1);

    for (int n = 1; n <= top; ++n) {
        std::vector<int> idx = a.indices_of_degree(n);
        Echelon ech(true);
        for (std::size_t local = 0; local < idx.size(); ++local) {
            int i = idx[local];
            Echelon::Ins ins = ech.insert(a.diff[static_cast<std::size_t>(i)]);
            if (ins.independent) {
                e_pend.push_back({n, SparseVec::unit(i), i});
                b_pend.push_back({n + 1, a.diff[static_cast<std::size_t>(i)], -1});
                boundaries[static_cast<std::size_t>(n) + 1].push_back(
                    a.diff[static_cast<std::size_t>(i)]);
            } else {
                // the tracked kernel combination is a cocycle (local indices
                // remapped to the original basis)
                SparseVec z;
                for (const auto& [local_j, c] : ins.combo.entries)
                    sv_axpy(z, c, SparseVec::unit(idx[static_cast<std::size_t>(local_j)]));
                cocycles[static_cast<std::size_t>(n)].push_back({n, std::move(z), -1});
            }
        }
    }

    for (int n = 1; n <= top; ++n) {
        Echelon ech;
        for (const SparseVec& b : boundaries[static_cast<std::size_t>(n)]) ech.insert(b);
        for (Pending& z : cocycles[static_cast<std::size_t>(n)]) {
            SparseVec copy = z.vec;
            if (ech.insert(std::move(copy)).independent) {
                if (z.vec.entries.size() == 1 && z.vec.entries.front().second == 1)
                    z.src = z.vec.entries.front().first;
                h_pend.push_back(std::move(z));
            }
        }
    }

    auto push_block = [&](char kind, std::vector<Pending>& pend) {
        std::stable_sort(pend.begin(), pend.end(),
                         [](const Pending& x, const Pending& y) { return x.degree < y.degree; });
        int first = sp.size();
        for (std::size_t j = 0; j < pend.size(); ++j) {
            BasisSplit::Entry ent;
            ent.kind = kind;
            ent.degree = pend[j].degree;
            ent.vec = std::move(pend[j].vec);
            if (pend[j].src >= 0)
                ent.label = a.labels[static_cast<std::size_t>(pend[j].src)];
            else if (ent.vec.entries.size() == 1 && ent.vec.entries.front().second == 1)
                ent.label = a.labels[static_cast<std::size_t>(ent.vec.entries.front().first)];
            else
                ent.label = std::string(1, kind) + std::to_string(j + 1) + "d" + std::to_string(ent.degree);
            sp.entries.push_back(std::move(ent));
        }
        return first;
    };

    // The e/b blocks must stay aligned (b[j] = d(e[j])); sorting both by the
    // same stable key preserves the pairing since |b_j| = |e_j| + 1.
    push_block('h', h_pend);
    sp.h_count = static_cast<int>(h_pend.size());
    int e_first = push_block('e', e_pend);
    sp.e_count = static_cast<int>(e_pend.size());
    int b_first = push_block('b', b_pend);
    sp.b_count = static_cast<int>(b_pend.size());
    for (int j = 0; j < sp.e_count; ++j) {
        sp.entries[static_cast<std::size_t>(e_first + j)].partner = b_first + j;
        sp.entries[static_cast<std::size_t>(b_first + j)].partner = e_first + j;
    }

    // per-degree coordinate solvers
    sp.solvers.assign(static_cast<std::size_t>(top) + 2, {});
    for (int s = 0; s < sp.size(); ++s) {
        auto& sol = sp.solvers[static_cast<std::size_t>(sp.entries[static_cast<std::size_t>(s)].degree)];
        sol.ech.insert(sp.entries[static_cast<std::size_t>(s)].vec);
        sol.entry_ids.push_back(s);
    }

    // sanity: the split really is a basis of A^+
    if (sp.size() != a.dim())
        throw ValidationError(Err::InvalidParameter, "basis split lost dimensions");
    return sp;
}

SplitAlgebra make_split_algebra(const FiniteAlgebra& a)
{
    SplitAlgebra s;
    s.base = a;
    s.split = split_basis(a);
    const int p = s.split.size();
    s.mul.assign(static_cast<std::size_t>(p), std::vector<SparseVec>(static_cast<std::size_t>(p)));
    s.diff.assign(static_cast<std::size_t>(p), SparseVec{});
    for (int i = 0; i < p; ++i) {
        const auto& ei = s.split.entries[static_cast<std::size_t>(i)];
        for (int j = 0; j < p; ++j) {
            const auto& ej = s.split.entries[static_cast<std::size_t>(j)];
            SparseVec prod = alg_mul(a, ei.vec, ej.vec);
            if (!prod.empty()) s.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                s.split.to_split(prod);
        }
        if (ei.kind == 'e') {
            s.diff[static_cast<std::size_t>(i)] = SparseVec::unit(ei.partner);
            // cross-check against the numeric differential
            SparseVec dv = s.split.to_split(alg_diff(a, ei.vec));
            if (!(dv == s.diff[static_cast<std::size_t>(i)]))
                throw ValidationError(Err::InvalidParameter, "split differential is not the e->b pairing");
        } else {
            SparseVec dv = alg_diff(a, ei.vec);
            if (!dv.empty())
                throw ValidationError(Err::InvalidParameter, "split h/b entry is not a cocycle");
        }
    }
    return s;
}

}  // namespace mapspace
