#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapspace/elem.hpp"

namespace mapspace {

/// Differential length of a zero differential; stands for infinity.
inline constexpr int DL_INFINITE = -1;
inline bool dl_is_infinite(int dl) { return dl == DL_INFINITE; }
std::string dl_str(int dl);

/// A free graded-commutative algebra on well-ordered generators with a
/// degree-+1 differential d(v_k) in the subalgebra on strictly earlier
/// generators, d o d = 0. Produced by validate_free only.
struct FreeModel {
    std::string name;
    GenCtx ctx;
    std::vector<Elem> diff;  // per ordinal
    bool minimal = false;

    const Elem& d_gen(int ordinal) const { return diff[static_cast<std::size_t>(ordinal)]; }
};

/// Checks every FreeModel invariant: positive generator degrees, degree +1,
/// triangularity against the well-order, d^2 = 0; computes the minimal flag.
FreeModel validate_free(std::string name, GenCtx ctx, std::vector<Elem> diff);

/// Derivation extension of the generator differential.
Elem d_elem(const FreeModel& m, const Elem& x);

/// Least word length occurring in any d(v); DL_INFINITE when d = 0.
/// Requires a minimal model (NotMinimal otherwise).
int differential_length(const FreeModel& m);

/// (least generator degree) - 1; DL_INFINITE for a generator-free model.
int connectivity(const FreeModel& m);

// Standard models.
FreeModel sphere_model(int n);                    // odd: one generator; even: two with dy = x^2
FreeModel power_model(int deg, int r);            // (x_deg, y_{r*deg-1}; dy = x^r), deg even
FreeModel eilenberg_model(int n);                 // one generator, d = 0

}  // namespace mapspace
