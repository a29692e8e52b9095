#pragma once

#include <gmpxx.h>

#include <string>

namespace mapspace {

// Exact rational scalar: always in lowest terms with positive denominator.
// Every arithmetic path in the project goes through this type; there is no
// floating point anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational frac(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool rat_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string rat_str(const Rational& q) { return q.get_str(); }

}  // namespace mapspace
