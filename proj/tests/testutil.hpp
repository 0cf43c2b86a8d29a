#pragma once

// Shared helpers for the test binaries: seeded random generators for
// scalars, monomials and polynomials, plus an independent rational
// elimination oracle used to cross-check the library's rank routines.

#include "kslab/coeff_matrix.hpp"
#include "kslab/polynomial.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testutil {

using kslab::CoeffMatrix;
using kslab::Monomial;
using kslab::Polynomial;
using kslab::Rat;
using kslab::Term;
using kslab::VarExp;
using kslab::VariableId;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline int random_int(std::mt19937_64& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline Rat random_rat(std::mt19937_64& g, int mag = 9, int den_max = 4) {
  Rat q(random_int(g, -mag, mag), random_int(g, 1, den_max));
  q.canonicalize();
  return q;
}

inline Rat random_nonzero_rat(std::mt19937_64& g, int mag = 9, int den_max = 4) {
  for (;;) {
    Rat q = random_rat(g, mag, den_max);
    if (q != 0) return q;
  }
}

inline Monomial random_monomial(std::mt19937_64& g, const std::vector<VariableId>& pool,
                                int max_exp = 3) {
  std::vector<VarExp> factors;
  for (const auto& v : pool) {
    int e = random_int(g, 0, max_exp);
    if (e > 0) factors.push_back({v, e});
  }
  return Monomial::from_factors(std::move(factors));
}

inline Polynomial random_poly(std::mt19937_64& g, const std::vector<VariableId>& pool,
                              int max_terms = 6, int max_exp = 3, int mag = 9) {
  std::vector<Term> terms;
  int k = random_int(g, 0, max_terms);
  for (int t = 0; t < k; ++t)
    terms.push_back({random_monomial(g, pool, max_exp), random_rat(g, mag)});
  return Polynomial::from_terms(std::move(terms));
}

// Straightforward rational Gaussian elimination with partial pivoting; an
// independent oracle for exact_rank (which goes mod-p first and falls back
// to fraction-free elimination over the integers).
inline std::size_t gauss_rank_rational(const CoeffMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Rat> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m.at(r, c);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[rank * cols + j], a[piv * cols + j]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i * cols + c] == 0) continue;
      Rat f = a[i * cols + c] / a[rank * cols + c];
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] -= f * a[rank * cols + j];
    }
    ++rank;
  }
  return rank;
}

} // namespace testutil
