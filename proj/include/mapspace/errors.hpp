#pragma once

#include <stdexcept>
#include <string>

namespace mapspace {

enum class Err {
    DegreeMismatch,
    NotTriangular,
    NotSquareZero,
    NotAssociative,
    NotGradedCommutative,
    LeibnizFailure,
    NoUnit,
    MixedAlgebras,
    NonPositiveDegreeGenerator,
    NotMinimal,
    UnsolvedPredecessor,
    NotDifferentialIdeal,
    NoWitness,
    PreconditionFailed,
    InvalidParameter,
    ParseError,
};

const char* err_name(Err e);

/* Structural invariant of an input value fails. CLI maps this to exit code 2. */
class ValidationError : public std::runtime_error {
public:
    ValidationError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code)
    {
    }
    Err code() const { return code_; }

private:
    Err code_;
};

/* Value is valid but outside an operation's hypotheses. CLI maps this to exit code 3. */
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code)
    {
    }
    Err code() const { return code_; }

private:
    Err code_;
};

/* Positioned syntax error from the model-file parser. */
class SyntaxError : public ValidationError {
public:
    SyntaxError(int line, int col, const std::string& msg)
        : ValidationError(Err::ParseError,
                          "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
          line_(line), col_(col)
    {
    }
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

}  // namespace mapspace
