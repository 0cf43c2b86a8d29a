#include "kslab/multilinear.hpp"

namespace kslab {

ReduceResult multilinear_reduce(const Polynomial& p) {
  ReduceResult res;
  Polynomial cur = p;
  for (const auto& v : p.support()) {
    if (cur.individual_degree(v) <= 1) continue;
    std::vector<Term> rem_terms;
    std::vector<Term> q_terms;
    rem_terms.reserve(cur.size());
    for (const auto& t : cur.terms()) {
      int e = t.mono.exponent(v);
      if (e <= 1) {
        rem_terms.push_back(t);
        continue;
      }
      Monomial mprime = Monomial::var(v, e).divide_into(t.mono);
      rem_terms.push_back({mprime * Monomial::var(v), t.coeff});
      for (int k = 0; k <= e - 2; ++k)
        q_terms.push_back({k > 0 ? mprime * Monomial::var(v, k) : mprime, t.coeff});
    }
    cur = Polynomial::from_terms(std::move(rem_terms));
    Polynomial q = Polynomial::from_terms(std::move(q_terms));
    if (!q.is_zero()) res.quotients.emplace(v, std::move(q));
  }
  res.remainder = std::move(cur);
  return res;
}

} // namespace kslab
