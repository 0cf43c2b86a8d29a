#include "kslab/monomial.hpp"

#include "kslab/error.hpp"

#include <algorithm>

namespace kslab {

Monomial Monomial::var(VariableId v, int exp) {
  return from_factors({{v, exp}});
}

Monomial Monomial::from_factors(std::vector<VarExp> factors) {
  for (const auto& f : factors)
    if (f.exp < 0) fail(errc::domain, "negative exponent in monomial");
  std::sort(factors.begin(), factors.end(),
            [](const VarExp& a, const VarExp& b) { return a.var < b.var; });
  Monomial m;
  for (const auto& f : factors) {
    if (f.exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().var == f.var)
      m.factors_.back().exp += f.exp;
    else
      m.factors_.push_back(f);
    m.degree_ += f.exp;
  }
  return m;
}

int Monomial::exponent(const VariableId& v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const VarExp& f, const VariableId& id) { return f.var < id; });
  return (it != factors_.end() && it->var == v) ? it->exp : 0;
}

bool Monomial::is_multilinear() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const VarExp& f) { return f.exp <= 1; });
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->var < b->var))
      out.factors_.push_back(*a++);
    else if (a == factors_.end() || b->var < a->var)
      out.factors_.push_back(*b++);
    else {
      out.factors_.push_back({a->var, a->exp + b->exp});
      ++a, ++b;
    }
  }
  out.degree_ = degree_ + o.degree_;
  return out;
}

bool Monomial::divides(const Monomial& o) const {
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end()) {
    while (b != o.factors_.end() && b->var < a->var) ++b;
    if (b == o.factors_.end() || !(b->var == a->var) || b->exp < a->exp) return false;
    ++a;
  }
  return true;
}

Monomial Monomial::divide_into(const Monomial& o) const {
  if (!divides(o)) fail(errc::domain, "monomial quotient is not a monomial");
  std::vector<VarExp> out;
  auto a = factors_.begin();
  for (const auto& f : o.factors_) {
    int sub = 0;
    if (a != factors_.end() && a->var == f.var) sub = (a++)->exp;
    if (f.exp - sub > 0) out.push_back({f.var, f.exp - sub});
  }
  return from_factors(std::move(out));
}

std::string Monomial::str() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += "*";
    out += f.var.name();
    if (f.exp != 1) out += "^" + std::to_string(f.exp);
  }
  return out;
}

} // namespace kslab
