#include "mapspace/free_model.hpp"

#include "mapspace/errors.hpp"

namespace mapspace {

std::string dl_str(int dl)
{
    return dl_is_infinite(dl) ? "inf" : std::to_string(dl);
}

FreeModel validate_free(std::string name, GenCtx ctx, std::vector<Elem> diff)
{
    if (diff.size() != ctx.size())
        throw ValidationError(Err::InvalidParameter, "differential not defined on every generator");
    for (const GenSym& g : ctx.gens())
        if (g.degree < 1)
            throw ValidationError(Err::InvalidParameter,
                                  "generator " + g.name + " has degree " + std::to_string(g.degree) +
                                      " (free models need degrees >= 1)");

    for (std::size_t k = 0; k < ctx.size(); ++k) {
        const Elem& dv = diff[k];
        if (dv.is_zero()) continue;
        if (dv.ctx_id() != ctx.id())
            throw ValidationError(Err::MixedAlgebras, "d(" + ctx.gen(static_cast<int>(k)).name +
                                                          ") uses a foreign generator set");
        auto deg = dv.homogeneous_degree();
        if (!deg || *deg != ctx.degree(static_cast<int>(k)) + 1)
            throw ValidationError(Err::DegreeMismatch,
                                  "d(" + ctx.gen(static_cast<int>(k)).name + ") must raise degree by 1");
        for (const auto& [m, c] : dv.terms())
            for (const auto& [ord, e] : m.factors())
                if (ord >= static_cast<int>(k))
                    throw ValidationError(Err::NotTriangular,
                                          "d(" + ctx.gen(static_cast<int>(k)).name + ") involves " +
                                              ctx.gen(ord).name + ", violating the well-order");
    }

    FreeModel m;
    m.name = std::move(name);
    m.ctx = std::move(ctx);
    m.diff = std::move(diff);

    for (std::size_t k = 0; k < m.ctx.size(); ++k) {
        Elem dd = d_elem(m, m.diff[k]);
        if (!dd.is_zero())
            throw ValidationError(Err::NotSquareZero,
                                  "d(d(" + m.ctx.gen(static_cast<int>(k)).name + ")) = " + dd.str(m.ctx));
    }

    m.minimal = true;
    for (const Elem& dv : m.diff)
        if (!dv.word_length_component(1).is_zero()) m.minimal = false;
    return m;
}

Elem d_elem(const FreeModel& m, const Elem& x)
{
    return derivation(m.ctx, m.diff, x);
}

int differential_length(const FreeModel& m)
{
    if (!m.minimal)
        throw PreconditionError(Err::NotMinimal,
                                "differential length is defined on minimal models only");
    int best = DL_INFINITE;
    for (const Elem& dv : m.diff) {
        if (dv.is_zero()) continue;
        int w = dv.min_word_length();
        if (dl_is_infinite(best) || w < best) best = w;
    }
    return best;
}

int connectivity(const FreeModel& m)
{
    if (m.ctx.size() == 0) return DL_INFINITE;
    int least = m.ctx.degree(0);
    for (const GenSym& g : m.ctx.gens()) least = std::min(least, g.degree);
    return least - 1;
}

FreeModel sphere_model(int n)
{
    if (n < 1) throw ValidationError(Err::InvalidParameter, "sphere dimension must be >= 1");
    if (n & 1) {
        GenCtx ctx({GenSym{"x" + std::to_string(n), n}});
        return validate_free("S" + std::to_string(n), std::move(ctx), {Elem::zero()});
    }
    return power_model(n, 2);
}

FreeModel power_model(int deg, int r)
{
    if (deg < 2 || (deg & 1) || r < 2)
        throw ValidationError(Err::InvalidParameter, "power model needs an even degree >= 2 and r >= 2");
    GenCtx ctx({GenSym{"x" + std::to_string(deg), deg},
                GenSym{"y" + std::to_string(r * deg - 1), r * deg - 1}});
    Elem dy = pow(ctx, Elem::gen(ctx, 0), r);
    std::string name = (r == 2) ? "S" + std::to_string(deg)
                                : "P" + std::to_string(deg) + "r" + std::to_string(r);
    return validate_free(std::move(name), std::move(ctx), {Elem::zero(), std::move(dy)});
}

FreeModel eilenberg_model(int n)
{
    if (n < 1) throw ValidationError(Err::InvalidParameter, "Eilenberg-MacLane degree must be >= 1");
    GenCtx ctx({GenSym{"x" + std::to_string(n), n}});
    return validate_free("KQ" + std::to_string(n), std::move(ctx), {Elem::zero()});
}

}  // namespace mapspace
