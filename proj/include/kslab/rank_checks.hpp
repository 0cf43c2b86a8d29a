#pragma once

#include "kslab/coeff_matrix.hpp"
#include "kslab/polynomial.hpp"
#include "kslab/word.hpp"

#include <string>
#include <vector>

namespace kslab {

// Projection onto the set-multilinear part: keeps exactly the terms whose
// monomial touches every block of both sides of w once.  Linear and
// idempotent.
Polynomial project_sml(const Polynomial& p, const Word& w);

// The coefficient polynomial of a negative-side set-multilinear monomial m
// inside f: the sum of c * m_pos over all terms c * m_pos * m of f whose
// negative-side part is exactly m.  m may live over any block subset T.
Polynomial extract_g_m(const Polynomial& f, const Word& w, const Monomial& m);

struct ClaimViolation {
  Monomial m;
  std::string reason;
};

struct ClaimReport {
  bool pass = false;
  std::size_t checked = 0;  // number of (T, m) pairs examined
  std::vector<ClaimViolation> violations;
};

// Checks, for every subset T of the negative blocks and every
// set-multilinear m over w|_T, that the leading monomial of the extracted
// g_m is at most m(sigma(m)|_{A^S}) in the given order, with equality
// exactly when T is the full negative side.  S is the largest positive
// block set whose intervals lie inside the intervals of T.
ClaimReport verify_leading_claim(const Word& w, const Polynomial& f, MonomialOrder order);

// The bound monomial of the claim for one m.
Monomial claim_bound_monomial(const Word& w, const Monomial& m);

struct RankReport {
  std::size_t rows = 0, cols = 0, rank = 0;
  bool full = false;
  // Relative-rank certificate over the integers:
  // rank^2 * 2^b >= rows * cols with b the largest entry magnitude of w.
  Int cert_lhs, cert_rhs;
  bool cert_ok = false;
};

RankReport verify_full_rank(const Word& w, const Polynomial& f);

} // namespace kslab
