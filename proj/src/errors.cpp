#include "mapspace/errors.hpp"

namespace mapspace {

const char* err_name(Err e)
{
    switch (e) {
    case Err::DegreeMismatch: return "DegreeMismatch";
    case Err::NotTriangular: return "NotTriangular";
    case Err::NotSquareZero: return "NotSquareZero";
    case Err::NotAssociative: return "NotAssociative";
    case Err::NotGradedCommutative: return "NotGradedCommutative";
    case Err::LeibnizFailure: return "LeibnizFailure";
    case Err::NoUnit: return "NoUnit";
    case Err::MixedAlgebras: return "MixedAlgebras";
    case Err::NonPositiveDegreeGenerator: return "NonPositiveDegreeGenerator";
    case Err::NotMinimal: return "NotMinimal";
    case Err::UnsolvedPredecessor: return "UnsolvedPredecessor";
    case Err::NotDifferentialIdeal: return "NotDifferentialIdeal";
    case Err::NoWitness: return "NoWitness";
    case Err::PreconditionFailed: return "PreconditionFailed";
    case Err::InvalidParameter: return "InvalidParameter";
    case Err::ParseError: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace mapspace
