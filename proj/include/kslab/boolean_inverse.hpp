#pragma once

#include "kslab/polynomial.hpp"
#include "kslab/word.hpp"

namespace kslab {

// The unique multilinear polynomial g with g(a) = 1/f(a) at every 0/1
// point a over the support of f's multilinear reduction.  Rejects f with a
// Boolean root (reporting a witness point) and supports larger than
// var_cap.  Computed by interpolation over the cube: coefficients to
// values (zeta), pointwise inversion, values back to coefficients
// (Moebius); n * 2^n exact scalar operations overall.
Polynomial boolean_inverse(const Polynomial& f, long var_cap = kDefaultVarCap);

// Independent check that g is the Boolean inverse of f: g must be
// multilinear and g*f must reduce to 1 modulo the ideal of v^2 - v.  Uses
// the reduction route, not interpolation.
bool verify_inverse(const Polynomial& f, const Polynomial& g);

} // namespace kslab
