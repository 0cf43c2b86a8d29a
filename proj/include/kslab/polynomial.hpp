#pragma once

#include "kslab/monomial.hpp"
#include "kslab/order.hpp"
#include "kslab/rational.hpp"

#include <map>
#include <vector>

namespace kslab {

struct Term {
  Monomial mono;
  Rat coeff;
  bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
};

using Assignment = std::map<VariableId, Rat>;
using Substitution = std::map<VariableId, class Polynomial>;

// Sparse multivariate polynomial with exact rational coefficients.  Terms
// are stored in strictly decreasing grlex order with no zero coefficients,
// so structural equality is semantic equality.
class Polynomial {
public:
  Polynomial() = default;

  static Polynomial zero() { return {}; }
  static Polynomial one() { return constant(1); }
  static Polynomial constant(Rat c);
  static Polynomial var(VariableId v, int exp = 1);
  static Polynomial term(Monomial m, Rat c);
  // Canonicalizes: sorts, merges duplicate monomials, drops zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int individual_degree(const VariableId& v) const;
  std::vector<VariableId> support() const;
  bool is_multilinear() const;

  Rat coeff(const Monomial& m) const;
  const Monomial& leading_monomial(MonomialOrder order) const;  // rejects zero
  const Term& leading_term(MonomialOrder order) const;          // rejects zero

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rat& c) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  // Total evaluation; every support variable must be assigned.
  Rat evaluate(const Assignment& a) const;
  // Partial substitution; unmapped variables are left in place.
  Polynomial substitute(const Substitution& s) const;

  std::string str() const;

private:
  std::vector<Term> terms_;
};

inline Polynomial operator*(const Rat& c, const Polynomial& p) { return p.scaled(c); }

struct DegreeProfile {
  int total = -1;
  std::map<VariableId, int> individual;
};
DegreeProfile degree_profile(const Polynomial& p);

} // namespace kslab
