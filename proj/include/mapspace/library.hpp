#pragma once

#include <string>
#include <vector>

#include "mapspace/dsl.hpp"

namespace mapspace {

/// Built-in space library used by the `make` command and the test suites.
struct LibraryEntry {
    std::string name;
    std::string usage;
    std::string description;
};

const std::vector<LibraryEntry>& library_entries();

/// Construct a named model; throws InvalidParameter for unknown names or bad
/// arguments.
ModelFile library_make(const std::string& name, const std::vector<std::string>& args);

/// A finite model of S^2 with nonzero internal differential (h2, e3, b4 with
/// h2^2 = b4 = d e3); the smallest non-formal-style input in the library.
FiniteAlgebra nonformal_s2();

}  // namespace mapspace
