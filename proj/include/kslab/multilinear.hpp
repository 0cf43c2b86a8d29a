#pragma once

#include "kslab/polynomial.hpp"

#include <map>

namespace kslab {

// Result of reducing modulo the ideal generated by v^2 - v for every
// variable v:  p == remainder + sum_v quotients[v] * (v^2 - v)  holds as an
// exact identity, and the remainder is the unique multilinear polynomial
// agreeing with p on all 0/1 points.
struct ReduceResult {
  Polynomial remainder;
  std::map<VariableId, Polynomial> quotients;
};

// Variables are processed in increasing variable-id order; for each one,
// v^e with e >= 2 rewrites to v with quotient contribution
// m' * (1 + v + ... + v^(e-2)) where m' is the term without its v part.
ReduceResult multilinear_reduce(const Polynomial& p);

} // namespace kslab
