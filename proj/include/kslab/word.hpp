#pragma once

#include "kslab/monomial.hpp"
#include "kslab/polynomial.hpp"

#include <optional>
#include <set>
#include <vector>

namespace kslab {

class Word;

// A closed integer interval [lo, hi]; empty when hi < lo.
struct Interval {
  long lo = 1;
  long hi = 0;
  bool empty() const { return hi < lo; }
  long width() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(long t) const { return lo <= t && t <= hi; }
  bool intersects(const Interval& o) const { return !empty() && !o.empty() && lo <= o.hi && o.lo <= hi; }
  bool subset_of(const Interval& o) const { return empty() || (!o.empty() && o.lo <= lo && hi <= o.hi); }
  bool operator==(const Interval& o) const = default;
};

// Consecutive-interval system of a word: position i carries an A-interval of
// width w_i when w_i >= 0 (laid out left to right over the positive entries)
// and a B-interval of width |w_i| when w_i < 0 (likewise over the negative
// entries).  Both interval families live on the same integer axis starting
// at 1.  Intervals at positions of the other sign are empty.
struct IndexIntervals {
  std::vector<Interval> A;  // size d, 0-based by position
  std::vector<Interval> B;
};

struct BalanceWitness {
  bool a_side = true;  // true: an uncovered (or empty) A-interval; false: B-side
  int index = 0;       // 1-based word position
};

struct BalanceResult {
  bool balanced = false;
  std::optional<BalanceWitness> witness;
};

// A 0/1 string indexed by an explicit set of axis positions.
class BitString {
public:
  BitString() = default;
  BitString(std::vector<long> positions, std::vector<bool> bits);
  static BitString over(const Interval& iv, const std::vector<bool>& bits);
  static BitString over(const Interval& iv, unsigned long long value);  // binary, MSB = iv.lo

  const std::vector<long>& positions() const { return positions_; }
  const std::vector<bool>& bits() const { return bits_; }
  std::size_t size() const { return positions_.size(); }
  bool at(long position) const;  // rejects positions outside the domain

  // Restriction to a subset of the domain; rejects non-subsets.
  BitString restrict_to(const std::vector<long>& positions) const;
  BitString restrict_to(const Interval& iv) const;

  // Concatenation of disjoint-domain strings.
  BitString merged_with(const BitString& o) const;

  bool operator==(const BitString& o) const = default;
  std::string str() const;

private:
  std::vector<long> positions_;
  std::vector<bool> bits_;
};

enum class Side { positive, negative };

// An integer word w in Z^d, 1-based positions.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<int> entries);

  int d() const { return static_cast<int>(entries_.size()); }
  int entry(int i) const;  // 1-based
  const std::vector<int>& entries() const { return entries_; }

  // Positions with w_i >= 0 / w_i < 0, 1-based, ascending.
  std::vector<int> positive_positions() const;
  std::vector<int> negative_positions() const;
  long positive_total() const;  // sum of w_i over positive positions
  long negative_total() const;  // sum of |w_j| over negative positions

  // Number of variables x^(i)_sigma resp. y^(j)_sigma of each side, and the
  // grand total sum_i 2^(|w_i|).
  long positive_var_count() const;
  long negative_var_count() const;
  long var_count() const { return positive_var_count() + negative_var_count(); }

  IndexIntervals intervals() const;
  std::string str() const;
  bool operator==(const Word& o) const = default;

private:
  std::vector<int> entries_;
};

BalanceResult is_balanced(const Word& w);

// The variable of block i indexed by sigma in {0,1}^(interval of i).  Blocks
// at positive positions produce x-variables, negative ones y-variables; a
// width-0 block has the single plain variable x.<i> / y.<i>.
VariableId block_variable(const Word& w, int i, const BitString& sigma);
// All variables of a block, sigma values in increasing binary order.
std::vector<VariableId> block_variables(const Word& w, int i);

// The set S of block positions a set-multilinear monomial touches, if it is
// one: exactly one variable per touched block, all on the same side, every
// variable exponent 1 and belonging to w.  Returns nullopt otherwise.
std::optional<std::set<int>> sml_support(const Monomial& m, const Word& w, Side side);
bool is_set_multilinear(const Monomial& m, const Word& w, Side side);
// A polynomial is set-multilinear over one side of w when every monomial
// touches every block of that side exactly once.
bool is_set_multilinear(const Polynomial& p, const Word& w, Side side);

// sigma(m): the index string of a set-multilinear monomial, defined on the
// union of the intervals of its support blocks.
BitString string_of_monomial(const Monomial& m, const Word& w, Side side);
// Inverse direction: the domain must be a union of complete block intervals
// of the given side.
Monomial monomial_of_string(const BitString& sigma, const Word& w, Side side);

// All set-multilinear monomials over the blocks S of one side, in increasing
// binary order of their index strings.
std::vector<Monomial> sml_monomials(const Word& w, Side side, const std::set<int>& S);

// Balanced word of length d over entries {floor(k/sqrt 2), -k}: alternates
// the two values, flips the last sign if one tail interval ends up
// uncovered, and reports infeasibility if no balanced word of that shape
// exists under this scheme.  floor(k/sqrt 2) is computed exactly as the
// largest t with 2t^2 <= k^2.
Word gen_balanced_word(int d, int k);

// Default bound on var_count() accepted by the expensive operations.
constexpr long kDefaultVarCap = 24;

} // namespace kslab
