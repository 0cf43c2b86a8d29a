#pragma once

#include "kslab/variable.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace kslab {

struct VarExp {
  VariableId var;
  int exp = 1;
  auto operator<=>(const VarExp&) const = default;
};

// A power product of variables.  Factors are kept sorted by variable id with
// strictly positive exponents, so equal monomials compare equal structurally.
class Monomial {
public:
  Monomial() = default;

  static Monomial one() { return Monomial(); }
  static Monomial var(VariableId v, int exp = 1);
  // Merges duplicates and drops zero exponents; rejects negative ones.
  static Monomial from_factors(std::vector<VarExp> factors);

  const std::vector<VarExp>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const { return degree_; }
  int exponent(const VariableId& v) const;
  bool is_multilinear() const;

  Monomial operator*(const Monomial& o) const;
  // Whether this divides o (componentwise exponents <=).
  bool divides(const Monomial& o) const;
  // Quotient o / this; caller must ensure divisibility.
  Monomial divide_into(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

  // Human-readable form like "x.1^2*y.2.01"; "1" for the empty monomial.
  std::string str() const;

private:
  std::vector<VarExp> factors_;
  int degree_ = 0;
};

} // namespace kslab
