#include "mapspace/elem.hpp"

#include <limits>

#include "mapspace/errors.hpp"

namespace mapspace {

namespace {
void check_ctx(const GenCtx& ctx, const Elem& x)
{
    if (x.ctx_id() != 0 && x.ctx_id() != ctx.id())
        throw ValidationError(Err::MixedAlgebras, "elements over different generator sets");
}
}  // namespace

void Elem::adopt_ctx(const GenCtx& ctx)
{
    ctx_id_ = ctx.id();
}

Elem Elem::unit(const GenCtx& ctx, const Rational& c)
{
    return term(ctx, Monomial::one(), c);
}

Elem Elem::gen(const GenCtx& ctx, int ordinal)
{
    return term(ctx, Monomial::gen(ctx, ordinal), 1);
}

Elem Elem::term(const GenCtx& ctx, const Monomial& m, const Rational& c)
{
    Elem e;
    e.ctx_id_ = ctx.id();
    if (!rat_zero(c)) e.terms_.emplace(m, c);
    return e;
}

void Elem::add_term(const Monomial& m, const Rational& c)
{
    if (rat_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (rat_zero(it->second)) terms_.erase(it);
    }
}

Elem& Elem::operator+=(const Elem& o)
{
    if (ctx_id_ == 0) ctx_id_ = o.ctx_id_;
    else if (o.ctx_id_ != 0 && o.ctx_id_ != ctx_id_)
        throw ValidationError(Err::MixedAlgebras, "sum of elements over different generator sets");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Elem& Elem::operator-=(const Elem& o)
{
    if (ctx_id_ == 0) ctx_id_ = o.ctx_id_;
    else if (o.ctx_id_ != 0 && o.ctx_id_ != ctx_id_)
        throw ValidationError(Err::MixedAlgebras, "difference of elements over different generator sets");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Elem Elem::operator-() const
{
    Elem r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Elem Elem::scaled(const Rational& c) const
{
    Elem r;
    r.ctx_id_ = ctx_id_;
    if (rat_zero(c)) return r;
    for (const auto& [m, k] : terms_) {
        Rational p = k * c;
        r.terms_.emplace(m, p);
    }
    return r;
}

std::optional<int> Elem::homogeneous_degree() const
{
    std::optional<int> deg;
    for (const auto& [m, c] : terms_) {
        if (!deg) deg = m.degree();
        else if (*deg != m.degree()) return std::nullopt;
    }
    return deg ? deg : std::optional<int>(0);
}

Elem Elem::degree_component(int n) const
{
    Elem r;
    r.ctx_id_ = ctx_id_;
    for (const auto& [m, c] : terms_)
        if (m.degree() == n) r.terms_.emplace(m, c);
    return r;
}

Elem Elem::word_length_component(int l) const
{
    Elem r;
    r.ctx_id_ = ctx_id_;
    for (const auto& [m, c] : terms_)
        if (m.word_length() == l) r.terms_.emplace(m, c);
    return r;
}

int Elem::min_word_length() const
{
    int best = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        int w = m.word_length();
        if (first || w < best) best = w;
        first = false;
    }
    return best;
}

std::string Elem::str(const GenCtx& ctx) const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (c == 1 && !m.is_one()) {
            s += m.str(ctx);
        } else if (m.is_one()) {
            s += rat_str(c);
        } else {
            s += rat_str(c) + "*" + m.str(ctx);
        }
    }
    return s;
}

Elem mul(const GenCtx& ctx, const Elem& a, const Elem& b)
{
    check_ctx(ctx, a);
    check_ctx(ctx, b);
    Elem r;
    r.ctx_id_ = ctx.id();
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            auto p = Monomial::mul(ctx, ma, mb);
            if (!p) continue;
            Rational c = ca * cb;
            if (p->first < 0) c = -c;
            r.add_term(p->second, c);
        }
    }
    return r;
}

Elem pow(const GenCtx& ctx, const Elem& a, int e)
{
    Elem r = Elem::unit(ctx);
    for (int i = 0; i < e; ++i) r = mul(ctx, r, a);
    return r;
}

Elem derivation(const GenCtx& ctx, const std::vector<Elem>& gen_images, const Elem& x)
{
    Elem out;
    for (const auto& [mono, coeff] : x.terms()) {
        const auto& fs = mono.factors();
        int prefix_deg = 0;
        for (std::size_t j = 0; j < fs.size(); ++j) {
            auto [ord, e] = fs[j];
            const Elem& dg = gen_images[static_cast<std::size_t>(ord)];
            if (!dg.is_zero()) {
                std::vector<Monomial::Factor> pre(fs.begin(), fs.begin() + static_cast<long>(j));
                if (e > 1) pre.emplace_back(ord, e - 1);
                std::vector<Monomial::Factor> suf(fs.begin() + static_cast<long>(j) + 1, fs.end());

                Rational c = coeff * e;
                if (prefix_deg & 1) c = -c;
                Elem t = Elem::term(ctx, Monomial::from_factors(ctx, std::move(pre)), c);
                t = mul(ctx, t, dg);
                t = mul(ctx, t, Elem::term(ctx, Monomial::from_factors(ctx, std::move(suf)), 1));
                out += t;
            }
            prefix_deg += ctx.degree(ord) * e;
        }
    }
    if (out.is_zero()) out.ctx_id_ = ctx.id();
    return out;
}

Elem substitute(const Elem& x, const GenCtx& dst, const std::vector<Elem>& images)
{
    Elem out;
    out.ctx_id_ = dst.id();
    for (const auto& [m, c] : x.terms()) {
        Elem t = Elem::unit(dst, c);
        for (const auto& [ord, e] : m.factors()) {
            if (static_cast<std::size_t>(ord) >= images.size())
                throw ValidationError(Err::MixedAlgebras, "substitution image missing for ordinal " +
                                                              std::to_string(ord));
            t = mul(dst, t, pow(dst, images[static_cast<std::size_t>(ord)], e));
            if (t.is_zero()) break;
        }
        out += t;
    }
    return out;
}

}  // namespace mapspace
