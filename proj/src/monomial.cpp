#include "mapspace/monomial.hpp"

#include <algorithm>

#include "mapspace/errors.hpp"

namespace mapspace {

Monomial Monomial::gen(const GenCtx& ctx, int ordinal, int exponent)
{
    return from_factors(ctx, {{ordinal, exponent}});
}

Monomial Monomial::from_factors(const GenCtx& ctx, std::vector<Factor> factors)
{
    Monomial m;
    std::erase_if(factors, [](const Factor& f) { return f.second == 0; });
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto [ord, e] = factors[i];
        if (ord < 0 || static_cast<std::size_t>(ord) >= ctx.size())
            throw ValidationError(Err::MixedAlgebras, "unknown generator ordinal " + std::to_string(ord));
        if (e < 0)
            throw ValidationError(Err::InvalidParameter, "negative exponent");
        if (i + 1 < factors.size() && factors[i + 1].first <= ord)
            throw ValidationError(Err::InvalidParameter, "factors not strictly increasing in ordinal");
        if (ctx.odd(ord) && e > 1)
            throw ValidationError(Err::InvalidParameter,
                                  "odd generator " + ctx.gen(ord).name + " with exponent > 1");
        m.degree_ += ctx.degree(ord) * e;
    }
    m.factors_ = std::move(factors);
    return m;
}

int Monomial::word_length() const
{
    int l = 0;
    for (const auto& [ord, e] : factors_) l += e;
    return l;
}

bool Monomial::contains(int ordinal) const
{
    for (const auto& [ord, e] : factors_)
        if (ord == ordinal) return true;
    return false;
}

std::optional<std::pair<int, Monomial>> Monomial::mul(const GenCtx& ctx, const Monomial& a,
                                                      const Monomial& b)
{
    const auto& fa = a.factors_;
    const auto& fb = b.factors_;

    // odd_suffix[k] = number of odd-degree factors of a at positions >= k
    // (their exponents are 1, so factors = letters for the sign count).
    std::vector<int> odd_suffix(fa.size() + 1, 0);
    for (std::size_t k = fa.size(); k-- > 0;)
        odd_suffix[k] = odd_suffix[k + 1] + (ctx.odd(fa[k].first) ? 1 : 0);

    std::vector<Factor> merged;
    merged.reserve(fa.size() + fb.size());
    std::size_t ia = 0, ib = 0;
    int parity = 0;
    while (ia < fa.size() && ib < fb.size()) {
        if (fa[ia].first < fb[ib].first) {
            merged.push_back(fa[ia++]);
        } else if (fa[ia].first > fb[ib].first) {
            if (ctx.odd(fb[ib].first)) parity += odd_suffix[ia];
            merged.push_back(fb[ib++]);
        } else {
            if (ctx.odd(fa[ia].first)) return std::nullopt;  // odd square
            merged.emplace_back(fa[ia].first, fa[ia].second + fb[ib].second);
            ++ia;
            ++ib;
        }
    }
    while (ia < fa.size()) merged.push_back(fa[ia++]);
    while (ib < fb.size()) merged.push_back(fb[ib++]);

    Monomial m;
    m.factors_ = std::move(merged);
    m.degree_ = a.degree_ + b.degree_;
    return std::make_pair((parity & 1) ? -1 : 1, std::move(m));
}

int Monomial::cmp(const Monomial& a, const Monomial& b)
{
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
    int wa = a.word_length(), wb = b.word_length();
    if (wa != wb) return wa < wb ? -1 : 1;
    if (a.factors_ != b.factors_) return a.factors_ < b.factors_ ? -1 : 1;
    return 0;
}

std::string Monomial::str(const GenCtx& ctx) const
{
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [ord, e] : factors_) {
        if (!s.empty()) s += "*";
        s += ctx.gen(ord).name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace mapspace
