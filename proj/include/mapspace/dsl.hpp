#pragma once

#include <string>
#include <variant>

#include "mapspace/finite_algebra.hpp"
#include "mapspace/free_model.hpp"

namespace mapspace {

/// A parsed model file: exactly one free cdga or one finite algebra.
///
/// Grammar:
///   file   ::= kind IDENT "{" item* "}"
///   kind   ::= "cdga" | "algebra"
///   item   ::= "gen" IDENT ":" INT ";"
///            | "d" IDENT "=" poly ";"
///            | "mul" IDENT "*" IDENT "=" poly ";"
///            | "unit" IDENT ";"
///   poly   ::= "0" | term ("+" term)*
///   term   ::= [rat "*"] factor ("*" factor)*
///   factor ::= IDENT ["^" INT]
///   rat    ::= ["-"] INT ["/" INT]
///
/// Missing "d" lines default to 0; missing "mul" lines default to 0 (with the
/// Koszul-rule half filled in). For the algebra kind a degree-0 generator must
/// be declared as the unit; it is absorbed into the implicit unit line.
struct ModelFile {
    std::variant<FreeModel, FiniteAlgebra> value;

    bool is_cdga() const { return std::holds_alternative<FreeModel>(value); }
    const FreeModel& cdga() const { return std::get<FreeModel>(value); }
    const FiniteAlgebra& algebra() const { return std::get<FiniteAlgebra>(value); }
    std::string name() const;
};

ModelFile parse_model(const std::string& text);
ModelFile parse_model_file(const std::string& path);

/// Canonical text form; parse(print(parse(t))) == parse(t).
std::string print_model(const FreeModel& m);
std::string print_model(const FiniteAlgebra& a);
std::string print_model(const ModelFile& f);

/// FNV-1a of the canonical text, as a hex digest for reports.
std::string model_digest(const ModelFile& f);

}  // namespace mapspace
