#include "mapspace/finite_algebra.hpp"

#include <algorithm>

#include "mapspace/errors.hpp"

namespace mapspace {

int FiniteAlgebra::top_degree() const
{
    int top = 0;
    for (int d : degrees) top = std::max(top, d);
    return top;
}

std::vector<int> FiniteAlgebra::indices_of_degree(int n) const
{
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (degrees[static_cast<std::size_t>(i)] == n) out.push_back(i);
    return out;
}

std::string FiniteAlgebra::vec_str(const SparseVec& v) const
{
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : v.entries) {
        if (!s.empty()) s += " + ";
        if (c == 1) s += labels[static_cast<std::size_t>(i)];
        else s += rat_str(c) + "*" + labels[static_cast<std::size_t>(i)];
    }
    return s;
}

SparseVec alg_mul(const FiniteAlgebra& a, const SparseVec& u, const SparseVec& v)
{
    SparseVec out;
    for (const auto& [i, ci] : u.entries)
        for (const auto& [j, cj] : v.entries) {
            Rational c = ci * cj;
            sv_axpy(out, c, a.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    return out;
}

SparseVec alg_diff(const FiniteAlgebra& a, const SparseVec& u)
{
    SparseVec out;
    for (const auto& [i, c] : u.entries) sv_axpy(out, c, a.diff[static_cast<std::size_t>(i)]);
    return out;
}

namespace {

int vec_degree(const FiniteAlgebra& a, const SparseVec& v)
{
    // degree of a homogeneous vector; -1 for zero, throws on mixed degrees
    int deg = -1;
    for (const auto& [i, c] : v.entries) {
        int d = a.degrees[static_cast<std::size_t>(i)];
        if (deg == -1) deg = d;
        else if (deg != d)
            throw ValidationError(Err::DegreeMismatch, "inhomogeneous table entry " + a.vec_str(v));
    }
    return deg;
}

}  // namespace

FiniteAlgebra validate_finite(const FiniteAlgebraSpec& spec)
{
    FiniteAlgebra a;
    a.name = spec.name;
    a.labels = spec.labels;
    a.degrees = spec.degrees;
    const int p = a.dim();
    if (a.degrees.size() != a.labels.size())
        throw ValidationError(Err::InvalidParameter, "labels/degrees size mismatch");
    for (int i = 0; i < p; ++i)
        if (a.degrees[static_cast<std::size_t>(i)] < 1)
            throw ValidationError(Err::NoUnit, "basis element " + a.labels[static_cast<std::size_t>(i)] +
                                                   " has degree " +
                                                   std::to_string(a.degrees[static_cast<std::size_t>(i)]) +
                                                   "; degree 0 is spanned by the unit alone");

    auto deg_of = [&](int i) { return a.degrees[static_cast<std::size_t>(i)]; };
    auto koszul = [&](int i, int j) { return (deg_of(i) & 1) && (deg_of(j) & 1) ? -1 : 1; };

    // fill the multiplication table, symmetrizing missing halves
    a.mul.assign(static_cast<std::size_t>(p), std::vector<SparseVec>(static_cast<std::size_t>(p)));
    for (const auto& [key, val] : spec.products) {
        auto [i, j] = key;
        if (i < 0 || i >= p || j < 0 || j >= p)
            throw ValidationError(Err::InvalidParameter, "product index out of range");
        a.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = val;
    }
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            bool has_ij = spec.products.count({i, j}) > 0;
            bool has_ji = spec.products.count({j, i}) > 0;
            if (has_ij && !has_ji)
                a.mul[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    sv_scaled(a.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                              koszul(i, j));
        }

    // graded commutativity (also catches explicit inconsistent pairs)
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) {
            SparseVec lhs = a.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            SparseVec rhs = sv_scaled(a.mul[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)],
                                      koszul(i, j));
            if (!(lhs == rhs))
                throw ValidationError(Err::NotGradedCommutative,
                                      a.labels[static_cast<std::size_t>(i)] + " * " +
                                          a.labels[static_cast<std::size_t>(j)] + " violates the Koszul rule");
        }

    // homogeneity of the table
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            const SparseVec& v = a.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            int d = vec_degree(a, v);
            if (d != -1 && d != deg_of(i) + deg_of(j))
                throw ValidationError(Err::DegreeMismatch,
                                      "product " + a.labels[static_cast<std::size_t>(i)] + " * " +
                                          a.labels[static_cast<std::size_t>(j)] + " has wrong degree");
        }

    // differential
    a.diff.assign(static_cast<std::size_t>(p), SparseVec{});
    for (const auto& [i, v] : spec.diff) {
        if (i < 0 || i >= p) throw ValidationError(Err::InvalidParameter, "differential index out of range");
        a.diff[static_cast<std::size_t>(i)] = v;
        int d = vec_degree(a, v);
        if (d != -1 && d != deg_of(i) + 1)
            throw ValidationError(Err::DegreeMismatch,
                                  "d(" + a.labels[static_cast<std::size_t>(i)] + ") must raise degree by 1");
    }

    // associativity on all triples
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            for (int k = 0; k < p; ++k) {
                SparseVec lhs = alg_mul(a, a.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                        SparseVec::unit(k));
                SparseVec rhs = alg_mul(a, SparseVec::unit(i),
                                        a.mul[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
                if (!(lhs == rhs))
                    throw ValidationError(Err::NotAssociative,
                                          "(" + a.labels[static_cast<std::size_t>(i)] + " " +
                                              a.labels[static_cast<std::size_t>(j)] + ") " +
                                              a.labels[static_cast<std::size_t>(k)] + " != ...");
            }

    // Leibniz on all pairs: d(ab) = (da)b + (-1)^|a| a(db)
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            SparseVec lhs = alg_diff(a, a.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            SparseVec rhs = alg_mul(a, a.diff[static_cast<std::size_t>(i)], SparseVec::unit(j));
            SparseVec t = alg_mul(a, SparseVec::unit(i), a.diff[static_cast<std::size_t>(j)]);
            sv_axpy(rhs, (deg_of(i) & 1) ? -1 : 1, t);
            if (!(lhs == rhs))
                throw ValidationError(Err::LeibnizFailure,
                                      "d(" + a.labels[static_cast<std::size_t>(i)] + " * " +
                                          a.labels[static_cast<std::size_t>(j)] + ")");
        }

    // d^2 = 0
    for (int i = 0; i < p; ++i) {
        SparseVec dd = alg_diff(a, a.diff[static_cast<std::size_t>(i)]);
        if (!dd.empty())
            throw ValidationError(Err::NotSquareZero,
                                  "d(d(" + a.labels[static_cast<std::size_t>(i)] + ")) != 0");
    }
    return a;
}

FiniteAlgebra truncated_poly(int deg, int height)
{
    if (deg < 1 || height < 2)
        throw ValidationError(Err::InvalidParameter, "truncated_poly needs degree >= 1 and height >= 2");
    if ((deg & 1) && height > 2)
        throw ValidationError(Err::InvalidParameter, "an odd generator squares to zero; height must be 2");
    FiniteAlgebraSpec s;
    s.name = (deg == 2) ? "CP" + std::to_string(height - 1)
                        : "T" + std::to_string(deg) + "h" + std::to_string(height);
    for (int k = 1; k < height; ++k) {
        s.labels.push_back(k == 1 ? "x" : "x" + std::to_string(k));
        s.degrees.push_back(k * deg);
    }
    for (int i = 1; i < height; ++i)
        for (int j = 1; j < height; ++j)
            if (i + j < height) s.products[{i - 1, j - 1}] = SparseVec::unit(i + j - 1);
    return validate_finite(s);
}

FiniteAlgebra trivial_products(const std::vector<int>& degrees)
{
    FiniteAlgebraSpec s;
    s.name = "trivial";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        s.labels.push_back("w" + std::to_string(degrees[i]) + "_" + std::to_string(i));
        s.degrees.push_back(degrees[i]);
        s.name += "_" + std::to_string(degrees[i]);
    }
    return validate_finite(s);
}

FiniteAlgebra sphere_algebra(int n)
{
    if (n < 1) throw ValidationError(Err::InvalidParameter, "sphere dimension must be >= 1");
    FiniteAlgebraSpec s;
    s.name = "HS" + std::to_string(n);
    s.labels = {"a" + std::to_string(n)};
    s.degrees = {n};
    return validate_finite(s);
}

FiniteAlgebra tensor_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b)
{
    // basis of (A⊗B)^+: a_i⊗1, 1⊗b_j, a_i⊗b_j
    FiniteAlgebraSpec s;
    s.name = a.name + "x" + b.name;
    const int pa = a.dim(), pb = b.dim();
    auto idx_a = [&](int i) { return i; };
    auto idx_b = [&](int j) { return pa + j; };
    auto idx_ab = [&](int i, int j) { return pa + pb + i * pb + j; };

    for (int i = 0; i < pa; ++i) {
        s.labels.push_back(a.labels[static_cast<std::size_t>(i)]);
        s.degrees.push_back(a.degrees[static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < pb; ++j) {
        s.labels.push_back(b.labels[static_cast<std::size_t>(j)]);
        s.degrees.push_back(b.degrees[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < pa; ++i)
        for (int j = 0; j < pb; ++j) {
            s.labels.push_back(a.labels[static_cast<std::size_t>(i)] + "_" +
                               b.labels[static_cast<std::size_t>(j)]);
            s.degrees.push_back(a.degrees[static_cast<std::size_t>(i)] +
                                b.degrees[static_cast<std::size_t>(j)]);
        }

    // embed a pure tensor u⊗v (u over A with unit flag, v over B with unit flag)
    auto embed = [&](const SparseVec& u, bool u_unit, const SparseVec& v, bool v_unit) {
        SparseVec out;
        if (u_unit && v_unit)
            throw ValidationError(Err::InvalidParameter, "unit component escapes the positive part");
        if (u_unit) {
            for (const auto& [j, c] : v.entries) sv_axpy(out, c, SparseVec::unit(idx_b(j)));
        } else if (v_unit) {
            for (const auto& [i, c] : u.entries) sv_axpy(out, c, SparseVec::unit(idx_a(i)));
        } else {
            for (const auto& [i, ci] : u.entries)
                for (const auto& [j, cj] : v.entries) {
                    Rational c = ci * cj;
                    sv_axpy(out, c, SparseVec::unit(idx_ab(i, j)));
                }
        }
        return out;
    };

    // product of pure tensors: (x⊗y)(x'⊗y') = (-1)^{|y||x'|} xx' ⊗ yy'
    // Components of xx' and yy' can land on the unit only when the factors are
    // units themselves (positive products stay positive), so pure-tensor
    // bookkeeping with unit flags is enough.
    auto mul_pure = [&](int ai, bool a_unit, int bj, bool b_unit, int ci, bool c_unit, int dj,
                        bool d_unit) -> SparseVec {
        // (a_ai⊗b_bj)·(a_ci⊗b_dj) with unit flags
        int ydeg = b_unit ? 0 : b.degrees[static_cast<std::size_t>(bj)];
        int xdeg = c_unit ? 0 : a.degrees[static_cast<std::size_t>(ci)];
        int sign = ((ydeg & 1) && (xdeg & 1)) ? -1 : 1;

        bool left_unit = a_unit && c_unit;
        bool right_unit = b_unit && d_unit;
        SparseVec left, right;
        if (!left_unit) {
            if (a_unit) left = SparseVec::unit(ci);
            else if (c_unit) left = SparseVec::unit(ai);
            else left = a.mul[static_cast<std::size_t>(ai)][static_cast<std::size_t>(ci)];
        }
        if (!right_unit) {
            if (b_unit) right = SparseVec::unit(dj);
            else if (d_unit) right = SparseVec::unit(bj);
            else right = b.mul[static_cast<std::size_t>(bj)][static_cast<std::size_t>(dj)];
        }
        if (left_unit && right_unit)
            throw ValidationError(Err::InvalidParameter, "positive product hit the unit");
        if ((!left_unit && left.empty()) || (!right_unit && right.empty())) return {};
        SparseVec out = embed(left, left_unit, right, right_unit);
        return sign < 0 ? sv_scaled(out, -1) : out;
    };

    auto basis_factors = [&](int t) {
        // decompose a tensor basis index into (ai, a_unit, bj, b_unit)
        struct F {
            int ai, bj;
            bool a_unit, b_unit;
        };
        if (t < pa) return F{t, -1, false, true};
        if (t < pa + pb) return F{-1, t - pa, true, false};
        int r = t - pa - pb;
        return F{r / pb, r % pb, false, false};
    };

    const int total = pa + pb + pa * pb;
    for (int s1 = 0; s1 < total; ++s1)
        for (int s2 = 0; s2 < total; ++s2) {
            auto f1 = basis_factors(s1);
            auto f2 = basis_factors(s2);
            SparseVec prod =
                mul_pure(f1.ai, f1.a_unit, f1.bj, f1.b_unit, f2.ai, f2.a_unit, f2.bj, f2.b_unit);
            if (!prod.empty()) s.products[{s1, s2}] = prod;
        }

    // d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy
    for (int t = 0; t < total; ++t) {
        auto f = basis_factors(t);
        SparseVec dv;
        if (!f.a_unit) {
            const SparseVec& da = a.diff[static_cast<std::size_t>(f.ai)];
            if (!da.empty())
                sv_axpy(dv, 1, embed(da, false, f.b_unit ? SparseVec{} : SparseVec::unit(f.bj), f.b_unit));
        }
        if (!f.b_unit) {
            const SparseVec& db = b.diff[static_cast<std::size_t>(f.bj)];
            if (!db.empty()) {
                int xdeg = f.a_unit ? 0 : a.degrees[static_cast<std::size_t>(f.ai)];
                sv_axpy(dv, (xdeg & 1) ? -1 : 1,
                        embed(f.a_unit ? SparseVec{} : SparseVec::unit(f.ai), f.a_unit, db, false));
            }
        }
        if (!dv.empty()) s.diff[t] = dv;
    }

    return validate_finite(s);
}

}  // namespace mapspace
