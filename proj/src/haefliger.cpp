#include "mapspace/haefliger.hpp"

#include <algorithm>
#include <set>

#include "mapspace/errors.hpp"

namespace mapspace {

std::vector<DualGen> dualize(const SplitAlgebra& salg)
{
    std::vector<DualGen> out;
    out.reserve(static_cast<std::size_t>(salg.dim()));
    for (const auto& e : salg.split.entries)
        out.push_back(DualGen{e.label, e.kind, -e.degree});
    return out;
}

void TensorElem::add(int a_index, const Monomial& m, const Rational& c)
{
    if (rat_zero(c)) return;
    auto key = std::make_pair(a_index, m);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (rat_zero(it->second)) terms.erase(it);
    }
}

namespace {

int a_degree(const MapModel& mm, int a_index)
{
    return a_index == 0 ? 0 : mm.salg.degree(a_index - 1);
}

bool zgen_survives(char kind, int degree)
{
    switch (kind) {
    case 'b': return degree >= 1;
    case 'e': return degree >= 2;
    default: return degree >= 1;
    }
}

}  // namespace

TensorElem t_mul(const MapModel& mm, const TensorElem& a, const TensorElem& b)
{
    TensorElem out;
    for (const auto& [ka, ca] : a.terms) {
        const auto& [ai, ma] = ka;
        for (const auto& [kb, cb] : b.terms) {
            const auto& [bi, mb] = kb;
            auto zp = Monomial::mul(mm.zctx, ma, mb);
            if (!zp) continue;
            Rational c = ca * cb;
            if (zp->first < 0) c = -c;
            // Koszul: the left Z-word moves past the right A-part
            if ((ma.degree() & 1) && (a_degree(mm, bi) & 1)) c = -c;

            if (ai == 0 && bi == 0) {
                out.add(0, zp->second, c);
            } else if (ai == 0) {
                out.add(bi, zp->second, c);
            } else if (bi == 0) {
                out.add(ai, zp->second, c);
            } else {
                const SparseVec& prod =
                    mm.salg.mul[static_cast<std::size_t>(ai - 1)][static_cast<std::size_t>(bi - 1)];
                for (const auto& [t, ct] : prod.entries) {
                    Rational cc = c * ct;
                    out.add(t + 1, zp->second, cc);
                }
            }
        }
    }
    return out;
}

TensorElem phi_gen(const MapModel& mm, int v_ord)
{
    TensorElem out;
    int vp = mm.v_pos[static_cast<std::size_t>(v_ord)];
    if (vp < 0)
        throw PreconditionError(Err::PreconditionFailed,
                                "generator " + mm.y.ctx.gen(v_ord).name + " is above the degree bound");
    for (int s = 0; s < mm.salg.dim(); ++s)
        out.add(s + 1, Monomial::gen(mm.zctx, mm.zord(vp, s)), 1);
    return out;
}

TensorElem apply_phi(const MapModel& mm, const Elem& x)
{
    TensorElem out;
    for (const auto& [mono, c] : x.terms()) {
        TensorElem t;
        t.add(0, Monomial::one(), c);
        for (const auto& [ord, e] : mono.factors()) {
            TensorElem img = phi_gen(mm, ord);
            for (int k = 0; k < e && !t.is_zero(); ++k) t = t_mul(mm, t, img);
        }
        for (const auto& [key, cc] : t.terms) out.add(key.first, key.second, cc);
    }
    return out;
}

TensorElem t_diff(const MapModel& mm, const TensorElem& t)
{
    TensorElem out;
    for (const auto& [key, c] : t.terms) {
        const auto& [ai, mz] = key;
        // (d_A a) (x) z
        if (ai != 0) {
            const SparseVec& da = mm.salg.diff[static_cast<std::size_t>(ai - 1)];
            for (const auto& [bt, cb] : da.entries) {
                Rational cc = c * cb;
                out.add(bt + 1, mz, cc);
            }
        }
        // (-1)^{|a|} a (x) D(z)
        Elem dz = derivation(mm.zctx, mm.d_full, Elem::term(mm.zctx, mz, 1));
        if (!dz.is_zero()) {
            Rational sign = (a_degree(mm, ai) & 1) ? -1 : 1;
            for (const auto& [m2, c2] : dz.terms()) {
                Rational cc = c * sign * c2;
                out.add(ai, m2, cc);
            }
        }
    }
    return out;
}

MapModel build_map_model(const FiniteAlgebra& x, const FreeModel& y, int N)
{
    if (!y.minimal)
        throw PreconditionError(Err::NotMinimal, "the Haefliger construction needs a minimal Y model");
    if (N < 0) throw ValidationError(Err::InvalidParameter, "degree bound must be >= 0");

    MapModel mm;
    mm.x_name = x.name;
    mm.y_name = y.name;
    mm.y = y;
    mm.salg = make_split_algebra(x);
    mm.bound = N;

    mm.v_pos.assign(y.ctx.size(), -1);
    for (std::size_t k = 0; k < y.ctx.size(); ++k) {
        if (y.ctx.degree(static_cast<int>(k)) <= N + 1) {
            mm.v_pos[k] = static_cast<int>(mm.used_v.size());
            mm.used_v.push_back(static_cast<int>(k));
        }
    }

    const int p = mm.salg.dim();
    std::vector<GenSym> zsyms;
    std::set<std::string> taken;
    for (int vp = 0; vp < static_cast<int>(mm.used_v.size()); ++vp) {
        int v_ord = mm.used_v[static_cast<std::size_t>(vp)];
        const GenSym& v = y.ctx.gen(v_ord);
        for (int s = 0; s < p; ++s) {
            const auto& ent = mm.salg.split.entries[static_cast<std::size_t>(s)];
            ZGenInfo zi;
            zi.split_index = s;
            zi.kind = ent.kind;
            zi.v_ord = v_ord;
            zi.degree = v.degree - ent.degree;
            zi.survives = zgen_survives(ent.kind, zi.degree);
            zi.name = std::string(1, ent.kind) + "_" + ent.label + "__" + v.name;
            while (!taken.insert(zi.name).second) zi.name += "_";
            mm.zinfo.push_back(zi);
            zsyms.push_back(GenSym{zi.name, zi.degree});
        }
    }
    mm.zctx = GenCtx(std::move(zsyms));

    // Solve the defining identity generator by generator along the well-order:
    //   sum_s (-1)^{|a_s|} a_s (x) D(a^s (x) v) = phi(dv) - sum_s (d_A a_s) (x) (a^s (x) v)
    mm.d_full.assign(mm.zinfo.size(), Elem::zero());
    for (int vp = 0; vp < static_cast<int>(mm.used_v.size()); ++vp) {
        int v_ord = mm.used_v[static_cast<std::size_t>(vp)];
        TensorElem rhs = apply_phi(mm, y.d_gen(v_ord));
        for (int s = 0; s < p; ++s) {
            const auto& ent = mm.salg.split.entries[static_cast<std::size_t>(s)];
            if (ent.kind == 'e')
                rhs.add(ent.partner + 1, Monomial::gen(mm.zctx, mm.zord(vp, s)), -1);
        }
        // collect componentwise against the A basis
        std::vector<Elem> comp(static_cast<std::size_t>(p) + 1);
        for (const auto& [key, c] : rhs.terms)
            comp[static_cast<std::size_t>(key.first)] += Elem::term(mm.zctx, key.second, c);
        if (!comp[0].is_zero())
            throw ValidationError(Err::UnsolvedPredecessor,
                                  "unit component of the defining identity is nonzero for " +
                                      y.ctx.gen(v_ord).name);
        for (int s = 0; s < p; ++s) {
            Elem d = comp[static_cast<std::size_t>(s) + 1];
            if ((mm.salg.degree(s) & 1)) d = -d;
            mm.d_full[static_cast<std::size_t>(mm.zord(vp, s))] = std::move(d);
        }
    }

    // truncate: keep the degree table's survivors, set the rest to zero
    mm.full_to_model.assign(mm.zinfo.size(), -1);
    std::vector<GenSym> msyms;
    for (std::size_t i = 0; i < mm.zinfo.size(); ++i) {
        if (!mm.zinfo[i].survives) continue;
        mm.full_to_model[i] = static_cast<int>(mm.survivors.size());
        mm.survivors.push_back(static_cast<int>(i));
        mm.model_to_full.push_back(static_cast<int>(i));
        mm.model_info.push_back(mm.zinfo[i]);
        msyms.push_back(GenSym{mm.zinfo[i].name, mm.zinfo[i].degree});
    }
    GenCtx mctx(std::move(msyms));
    std::vector<Elem> mdiff;
    mdiff.reserve(mm.survivors.size());
    for (int full : mm.survivors) {
        Elem out;
        for (const auto& [mono, c] : mm.d_full[static_cast<std::size_t>(full)].terms()) {
            bool killed = false;
            std::vector<Monomial::Factor> remapped;
            for (const auto& [ord, e] : mono.factors()) {
                int t = mm.full_to_model[static_cast<std::size_t>(ord)];
                if (t < 0) {
                    killed = true;
                    break;
                }
                remapped.emplace_back(t, e);
            }
            if (!killed) out += Elem::term(mctx, Monomial::from_factors(mctx, remapped), c);
        }
        mdiff.push_back(std::move(out));
    }
    mm.model = validate_free("F_" + mm.x_name + "__" + mm.y_name, std::move(mctx), std::move(mdiff));
    return mm;
}

bool verify_morphism(const MapModel& mm)
{
    for (int v_ord : mm.used_v) {
        TensorElem lhs = t_diff(mm, phi_gen(mm, v_ord));
        TensorElem rhs = apply_phi(mm, mm.y.d_gen(v_ord));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace mapspace
