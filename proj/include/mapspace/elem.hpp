#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mapspace/monomial.hpp"
#include "mapspace/rational.hpp"

namespace mapspace {

/// A finite rational combination of canonical monomials. Zero coefficients are
/// never stored, so equality is syntactic. An element remembers the id of the
/// generator context it was built over; the zero element is context-free.
class Elem {
public:
    Elem() = default;

    static Elem zero() { return Elem{}; }
    static Elem unit(const GenCtx& ctx, const Rational& c = 1);
    static Elem gen(const GenCtx& ctx, int ordinal);
    static Elem term(const GenCtx& ctx, const Monomial& m, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    std::uint64_t ctx_id() const { return ctx_id_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c);
    Elem& operator+=(const Elem& o);
    Elem& operator-=(const Elem& o);
    Elem operator-() const;
    Elem scaled(const Rational& c) const;

    bool operator==(const Elem& o) const { return terms_ == o.terms_; }
    bool operator!=(const Elem& o) const { return !(*this == o); }

    /// Degree if homogeneous (zero counts as homogeneous of any degree).
    std::optional<int> homogeneous_degree() const;
    Elem degree_component(int n) const;
    Elem word_length_component(int l) const;
    int min_word_length() const;  // 0 for the zero element

    std::string str(const GenCtx& ctx) const;

    friend Elem mul(const GenCtx& ctx, const Elem& a, const Elem& b);

private:
    std::uint64_t ctx_id_ = 0;
    std::map<Monomial, Rational> terms_;

    void adopt_ctx(const GenCtx& ctx);
    friend Elem pow(const GenCtx& ctx, const Elem& a, int e);
    friend Elem substitute(const Elem& x, const GenCtx& dst, const std::vector<Elem>& images);
    friend Elem derivation(const GenCtx& ctx, const std::vector<Elem>& gen_images, const Elem& x);
};

Elem mul(const GenCtx& ctx, const Elem& a, const Elem& b);
Elem pow(const GenCtx& ctx, const Elem& a, int e);

/// Algebra-morphism substitution: each source ordinal is replaced by
/// images[ordinal] (an element of the destination context), extended
/// multiplicatively. Koszul signs are handled by the destination product.
Elem substitute(const Elem& x, const GenCtx& dst, const std::vector<Elem>& images);

/// Graded Leibniz extension: gen_images[ordinal] is the value on the
/// generator; the result on a word picks up (-1)^(degree of the prefix).
Elem derivation(const GenCtx& ctx, const std::vector<Elem>& gen_images, const Elem& x);

}  // namespace mapspace
