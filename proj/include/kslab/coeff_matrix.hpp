#pragma once

#include "kslab/polynomial.hpp"
#include "kslab/word.hpp"

#include <cstdint>
#include <vector>

namespace kslab {

// Dense rational matrix, row-major.
class CoeffMatrix {
public:
  CoeffMatrix() = default;
  CoeffMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  // The coefficient matrix of f over a word: rows are indexed by the
  // set-multilinear monomials over the full positive side, columns by those
  // over the full negative side, both in increasing binary order of their
  // index strings; the (m, m') entry is the coefficient of m * m' in f.
  static CoeffMatrix from_polynomial(const Polynomial& f, const Word& w);

  // The monomial labelling a row / column.
  static Monomial row_monomial(const Word& w, std::size_t r);
  static Monomial col_monomial(const Word& w, std::size_t c);

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

// Exact rank over the rationals.  A full-rank result modulo a fixed prime
// already certifies full exact rank (mod-p rank never exceeds the exact
// one); otherwise falls back to fraction-free Bareiss elimination over the
// integers after clearing row denominators.
std::size_t exact_rank(const CoeffMatrix& m);

// Rank modulo p by straightforward Gaussian elimination; requires that no
// denominator in the matrix is divisible by p.
std::size_t rank_mod_p(const CoeffMatrix& m, std::uint64_t p);

} // namespace kslab
