#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapspace/symbol.hpp"

namespace mapspace {

/// A canonical-form word of a free graded-commutative algebra: factors sorted
/// strictly by ordinal, exponents >= 1, odd-degree generators with exponent 1.
/// The empty word is the algebra unit.
class Monomial {
public:
    using Factor = std::pair<int, int>;  // (ordinal, exponent)

    Monomial() = default;

    static Monomial one() { return Monomial{}; }
    static Monomial gen(const GenCtx& ctx, int ordinal, int exponent = 1);
    static Monomial from_factors(const GenCtx& ctx, std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    int degree() const { return degree_; }
    int word_length() const;
    bool is_one() const { return factors_.empty(); }
    bool contains(int ordinal) const;

    /// Koszul-signed product. Returns nullopt when an odd generator squares
    /// (the product is zero); otherwise (sign, canonical product word).
    static std::optional<std::pair<int, Monomial>> mul(const GenCtx& ctx, const Monomial& a,
                                                       const Monomial& b);

    /// Strict total order: degree, then word length, then factor sequence.
    static int cmp(const Monomial& a, const Monomial& b);
    bool operator<(const Monomial& o) const { return cmp(*this, o) < 0; }
    bool operator==(const Monomial& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const Monomial& o) const { return cmp(*this, o) != 0; }

    std::string str(const GenCtx& ctx) const;

private:
    std::vector<Factor> factors_;
    int degree_ = 0;
};

}  // namespace mapspace
