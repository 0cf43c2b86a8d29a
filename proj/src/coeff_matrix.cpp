#include "kslab/coeff_matrix.hpp"

#include "kslab/error.hpp"

#include <algorithm>
#include <optional>

namespace kslab {

namespace {

constexpr std::size_t kMaxMatrixCells = 1u << 22;

struct SideLayout {
  std::vector<int> blocks;          // positions on this side, ascending
  std::vector<Interval> intervals;  // matching intervals
  long width = 0;                   // total index-string length
};

SideLayout side_layout(const Word& w, Side side) {
  SideLayout out;
  auto iv = w.intervals();
  for (int i = 1; i <= w.d(); ++i) {
    bool on_side = (side == Side::positive) ? (w.entry(i) >= 0) : (w.entry(i) < 0);
    if (!on_side) continue;
    const Interval& blk = (side == Side::positive) ? iv.A[static_cast<std::size_t>(i - 1)]
                                                   : iv.B[static_cast<std::size_t>(i - 1)];
    out.blocks.push_back(i);
    out.intervals.push_back(blk);
    out.width += blk.width();
  }
  if (out.width > 24) fail(errc::cap, "coefficient matrix side too wide");
  return out;
}

// Index of a full-side set-multilinear monomial, or nullopt when the
// factors do not form one.  Factors must carry exponent 1 and exactly one
// variable per block of the side.
std::optional<std::size_t> side_index(const std::vector<const VarExp*>& factors,
                                      const SideLayout& lay) {
  if (factors.size() != lay.blocks.size()) return std::nullopt;
  unsigned long long value = 0;
  long filled = 0;
  // Factors are sorted by variable id, hence by block.
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const VarExp& f = *factors[k];
    if (f.exp != 1 || f.var.block != lay.blocks[k]) return std::nullopt;
    long width = lay.intervals[k].width();
    if (f.var.aux_len != width) return std::nullopt;
    value = (value << width) | f.var.aux;
    filled += width;
  }
  (void)filled;
  return static_cast<std::size_t>(value);
}

} // namespace

CoeffMatrix::CoeffMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0 || rows * cols > kMaxMatrixCells)
    fail(errc::cap, "matrix dimensions out of range");
  data_.assign(rows * cols, Rat(0));
}

CoeffMatrix CoeffMatrix::from_polynomial(const Polynomial& f, const Word& w) {
  SideLayout pos = side_layout(w, Side::positive);
  SideLayout neg = side_layout(w, Side::negative);
  CoeffMatrix m(1ull << pos.width, 1ull << neg.width);
  for (const auto& t : f.terms()) {
    std::vector<const VarExp*> xf, yf;
    bool other = false;
    for (const auto& fac : t.mono.factors()) {
      if (fac.var.role == VarRole::X)
        xf.push_back(&fac);
      else if (fac.var.role == VarRole::Y)
        yf.push_back(&fac);
      else
        other = true;
    }
    if (other) continue;
    auto r = side_index(xf, pos);
    auto c = side_index(yf, neg);
    if (r && c) m.at(*r, *c) = t.coeff;
  }
  return m;
}

Monomial CoeffMatrix::row_monomial(const Word& w, std::size_t r) {
  SideLayout pos = side_layout(w, Side::positive);
  std::vector<VarExp> factors;
  long used = 0;
  for (std::size_t k = 0; k < pos.blocks.size(); ++k) {
    long width = pos.intervals[k].width();
    used += width;
    unsigned long long part = (r >> (pos.width - used)) & ((1ull << width) - 1);
    factors.push_back({block_variable(w, pos.blocks[k], BitString::over(pos.intervals[k], part)), 1});
  }
  return Monomial::from_factors(std::move(factors));
}

Monomial CoeffMatrix::col_monomial(const Word& w, std::size_t c) {
  SideLayout neg = side_layout(w, Side::negative);
  std::vector<VarExp> factors;
  long used = 0;
  for (std::size_t k = 0; k < neg.blocks.size(); ++k) {
    long width = neg.intervals[k].width();
    used += width;
    unsigned long long part = (c >> (neg.width - used)) & ((1ull << width) - 1);
    factors.push_back({block_variable(w, neg.blocks[k], BitString::over(neg.intervals[k], part)), 1});
  }
  return Monomial::from_factors(std::move(factors));
}

std::size_t rank_mod_p(const CoeffMatrix& m, std::uint64_t p) {
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::vector<std::uint64_t> a(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rat& q = m.at(r, c);
      std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
      std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
      if (den == 0) fail(errc::domain, "denominator divisible by the chosen prime");
      a[r * m.cols() + c] = mulmod(num, powmod(den, p - 2));
    }
  std::size_t rank = 0;
  std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv * cols + c] == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[rank * cols + j], a[piv * cols + j]);
    std::uint64_t inv = powmod(a[rank * cols + c], p - 2);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      std::uint64_t factor = mulmod(a[i * cols + c], inv);
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        std::uint64_t sub = mulmod(factor, a[rank * cols + j]);
        std::uint64_t& cell = a[i * cols + j];
        cell = (cell >= sub) ? cell - sub : cell + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

std::size_t bareiss_rank(const CoeffMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Int> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Int l = 1;
    for (std::size_t c = 0; c < cols; ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(r, c).get_den().get_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) {
      const Rat& q = m.at(r, c);
      a[r * cols + c] = q.get_num() * (l / q.get_den());
    }
  }
  Int prev = 1;
  std::size_t rank = 0;
  for (; rank < std::min(rows, cols); ++rank) {
    // Full pivot search over the remaining submatrix.
    std::size_t pr = rank, pc = rank;
    bool found = false;
    for (std::size_t i = rank; i < rows && !found; ++i)
      for (std::size_t j = rank; j < cols && !found; ++j)
        if (a[i * cols + j] != 0) {
          pr = i;
          pc = j;
          found = true;
        }
    if (!found) break;
    if (pr != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[rank * cols + j], a[pr * cols + j]);
    if (pc != rank)
      for (std::size_t i = 0; i < rows; ++i) std::swap(a[i * cols + rank], a[i * cols + pc]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = rank + 1; j < cols; ++j) {
        Int t = a[rank * cols + rank] * a[i * cols + j] - a[i * cols + rank] * a[rank * cols + j];
        mpz_divexact(a[i * cols + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + rank] = 0;
    }
    prev = a[rank * cols + rank];
  }
  return rank;
}

} // namespace

std::size_t exact_rank(const CoeffMatrix& m) {
  // The Mersenne prime 2^61 - 1; full rank mod p is a certificate for full
  // exact rank, which is the common case here.  Denominator collisions are
  // handled by skipping straight to Bareiss.
  constexpr std::uint64_t p = 2305843009213693951ull;
  try {
    std::size_t rp = rank_mod_p(m, p);
    if (rp == std::min(m.rows(), m.cols())) return rp;
  } catch (const error&) {
    // fall through
  }
  return bareiss_rank(m);
}

} // namespace kslab
