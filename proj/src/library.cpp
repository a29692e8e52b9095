#include "mapspace/library.hpp"

#include "mapspace/errors.hpp"

namespace mapspace {

namespace {

int int_arg(const std::vector<std::string>& args, std::size_t i, const char* what)
{
    if (i >= args.size())
        throw ValidationError(Err::InvalidParameter, std::string("missing argument: ") + what);
    try {
        std::size_t pos = 0;
        int v = std::stoi(args[i], &pos);
        if (pos != args[i].size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(Err::InvalidParameter,
                              std::string(what) + " must be an integer, got '" + args[i] + "'");
    }
}

}  // namespace

FiniteAlgebra nonformal_s2()
{
    FiniteAlgebraSpec s;
    s.name = "S2big";
    s.labels = {"h2", "e3", "b4"};
    s.degrees = {2, 3, 4};
    s.products[{0, 0}] = SparseVec::unit(2);
    s.diff[1] = SparseVec::unit(2);
    return validate_finite(s);
}

const std::vector<LibraryEntry>& library_entries()
{
    static const std::vector<LibraryEntry> entries = {
        {"sphere", "make sphere N", "minimal model of the N-sphere (cdga)"},
        {"em", "make em N", "Eilenberg-MacLane model K(Q,N): one generator, d = 0 (cdga)"},
        {"power", "make power D R", "(x_D, y_{R*D-1}; dy = x^R), D even (cdga)"},
        {"cp", "make cp K", "cohomology of complex projective K-space, Q[x]/x^{K+1} (algebra)"},
        {"truncpoly", "make truncpoly D H", "truncated polynomial algebra Q[x_D]/x^H (algebra)"},
        {"sphere-algebra", "make sphere-algebra N", "cohomology of the N-sphere (algebra)"},
        {"product-spheres", "make product-spheres N M", "cohomology of S^N x S^M (algebra)"},
        {"wedge", "make wedge D1 D2 ...", "one class per degree, all products zero (algebra)"},
        {"s2big", "make s2big", "finite S^2 model with internal differential (algebra)"},
    };
    return entries;
}

ModelFile library_make(const std::string& name, const std::vector<std::string>& args)
{
    ModelFile f;
    if (name == "sphere") {
        f.value = sphere_model(int_arg(args, 0, "dimension"));
    } else if (name == "em") {
        f.value = eilenberg_model(int_arg(args, 0, "degree"));
    } else if (name == "power") {
        f.value = power_model(int_arg(args, 0, "degree"), int_arg(args, 1, "exponent"));
    } else if (name == "cp") {
        f.value = truncated_poly(2, int_arg(args, 0, "K") + 1);
    } else if (name == "truncpoly") {
        f.value = truncated_poly(int_arg(args, 0, "degree"), int_arg(args, 1, "height"));
    } else if (name == "sphere-algebra") {
        f.value = sphere_algebra(int_arg(args, 0, "dimension"));
    } else if (name == "product-spheres") {
        f.value = tensor_algebra(sphere_algebra(int_arg(args, 0, "N")),
                                 sphere_algebra(int_arg(args, 1, "M")));
    } else if (name == "wedge") {
        if (args.empty())
            throw ValidationError(Err::InvalidParameter, "wedge needs at least one degree");
        std::vector<int> degs;
        for (std::size_t i = 0; i < args.size(); ++i) degs.push_back(int_arg(args, i, "degree"));
        f.value = trivial_products(degs);
    } else if (name == "s2big") {
        f.value = nonformal_s2();
    } else {
        throw ValidationError(Err::InvalidParameter, "unknown library model '" + name + "'");
    }
    return f;
}

}  // namespace mapspace
