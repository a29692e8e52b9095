#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mapspace/errors.hpp"

namespace mapspace {

/// One generator of a graded algebra. `ordinal` is its position in the
/// well-order of its algebra; degrees may be negative (dual generators).
struct GenSym {
    std::string name;
    int degree = 0;
    int ordinal = 0;
};

/// The generator table of one algebra. Ordinals are the indices 0..size()-1.
/// Copies keep the identity; two elements may be combined only when their
/// contexts share an id (MixedAlgebras otherwise).
class GenCtx {
public:
    GenCtx() = default;
    explicit GenCtx(std::vector<GenSym> gens);

    std::size_t size() const { return gens_.size(); }
    const GenSym& gen(int ordinal) const { return gens_[static_cast<std::size_t>(ordinal)]; }
    const std::vector<GenSym>& gens() const { return gens_; }
    int degree(int ordinal) const { return gens_[static_cast<std::size_t>(ordinal)].degree; }
    bool odd(int ordinal) const { return (degree(ordinal) & 1) != 0; }
    std::uint64_t id() const { return id_; }

private:
    std::vector<GenSym> gens_;
    std::uint64_t id_ = 0;
};

}  // namespace mapspace
