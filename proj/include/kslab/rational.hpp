#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kslab {

// Exact rational scalar.  All arithmetic in the library is exact; no
// floating point is used anywhere.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "<num>" or "<num>/<den>" with optional leading '-'.  The result is
// canonicalized (gcd reduced, positive denominator).  Rejects den == 0 and
// malformed strings.
Rat rat_from_string(const std::string& s);

// Always renders as "<num>/<den>" with positive denominator, e.g. "-2/1".
std::string rat_to_string(const Rat& q);

inline Rat rat_of(long n) { return Rat(n); }

} // namespace kslab
