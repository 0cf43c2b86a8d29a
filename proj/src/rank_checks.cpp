#include "kslab/rank_checks.hpp"

#include "kslab/error.hpp"
#include "kslab/knapsack.hpp"

#include <algorithm>
#include <map>

namespace kslab {

namespace {

// Splits a monomial into its negative-side part and the rest; the rest
// keeps every non-Y factor.
std::pair<Monomial, Monomial> split_negative(const Monomial& mono, const Word& w) {
  std::vector<VarExp> neg, rest;
  for (const auto& f : mono.factors()) {
    bool is_neg = f.var.role == VarRole::Y && f.var.block >= 1 && f.var.block <= w.d() &&
                  w.entry(f.var.block) < 0;
    (is_neg ? neg : rest).push_back(f);
  }
  return {Monomial::from_factors(std::move(neg)), Monomial::from_factors(std::move(rest))};
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare(a, b, MonomialOrder::grlex) < 0;
  }
};

} // namespace

Polynomial project_sml(const Polynomial& p, const Word& w) {
  std::set<int> pos_full, neg_full;
  for (int i : w.positive_positions()) pos_full.insert(i);
  for (int j : w.negative_positions()) neg_full.insert(j);
  std::vector<Term> keep;
  for (const auto& t : p.terms()) {
    auto [neg, rest] = split_negative(t.mono, w);
    auto sn = sml_support(neg, w, Side::negative);
    auto sp = sml_support(rest, w, Side::positive);
    if (sn && sp && *sn == neg_full && *sp == pos_full) keep.push_back(t);
  }
  return Polynomial::from_terms(std::move(keep));
}

Polynomial extract_g_m(const Polynomial& f, const Word& w, const Monomial& m) {
  if (!sml_support(m, w, Side::negative))
    fail(errc::domain, "monomial is not set-multilinear over the negative side");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    auto [neg, rest] = split_negative(t.mono, w);
    if (neg == m) out.push_back({rest, t.coeff});
  }
  return Polynomial::from_terms(std::move(out));
}

Monomial claim_bound_monomial(const Word& w, const Monomial& m) {
  auto T = sml_support(m, w, Side::negative);
  if (!T) fail(errc::domain, "monomial is not set-multilinear over the negative side");
  BitString sigma = string_of_monomial(m, w, Side::negative);
  auto iv = w.intervals();
  std::set<int> S = collapse_support(w, *T);
  BitString restricted;
  for (int i : S)
    restricted = restricted.merged_with(sigma.restrict_to(iv.A[static_cast<std::size_t>(i - 1)]));
  return monomial_of_string(restricted, w, Side::positive);
}

ClaimReport verify_leading_claim(const Word& w, const Polynomial& f, MonomialOrder order) {
  ClaimReport report;
  auto neg_blocks = w.negative_positions();

  // Bucket f by negative-side part once; each bucket is the term list of
  // one g_m.
  std::map<Monomial, std::vector<Term>, MonoLess> buckets;
  for (const auto& t : f.terms()) {
    auto [neg, rest] = split_negative(t.mono, w);
    buckets[neg].push_back({rest, t.coeff});
  }

  std::set<int> full_T(neg_blocks.begin(), neg_blocks.end());

  // Enumerate every T and every set-multilinear m over w|_T via a mixed
  // radix counter: digit j picks "absent" or one of the 2^(b_j) strings.
  std::vector<long> widths;
  for (int j : neg_blocks) widths.push_back(std::abs(w.entry(j)));
  std::vector<long> digit(widths.size(), 0);
  auto iv = w.intervals();

  while (true) {
    std::set<int> T;
    std::vector<VarExp> factors;
    for (std::size_t k = 0; k < digit.size(); ++k) {
      if (digit[k] == 0) continue;
      int j = neg_blocks[k];
      T.insert(j);
      BitString sigma = BitString::over(iv.B[static_cast<std::size_t>(j - 1)],
                                        static_cast<unsigned long long>(digit[k] - 1));
      factors.push_back({block_variable(w, j, sigma), 1});
    }
    Monomial m = Monomial::from_factors(std::move(factors));
    ++report.checked;

    auto it = buckets.find(m);
    Polynomial g_m =
        (it == buckets.end()) ? Polynomial::zero() : Polynomial::from_terms(it->second);
    if (g_m.is_zero()) {
      // The bound is vacuous for a vanishing coefficient polynomial, but on
      // the full negative side equality is promised, so zero is a failure.
      if (T == full_T) report.violations.push_back({m, "g_m vanishes on the full block set"});
    } else {
      Monomial bound = claim_bound_monomial(w, m);
      int cmp = compare(g_m.leading_monomial(order), bound, order);
      bool want_equal = (T == full_T);
      if (cmp > 0)
        report.violations.push_back({m, "leading monomial exceeds the bound"});
      else if (want_equal && cmp != 0)
        report.violations.push_back({m, "leading monomial falls short on the full block set"});
    }

    // Advance the counter.
    std::size_t k = 0;
    for (; k < digit.size(); ++k) {
      if (digit[k] < (1l << widths[k])) {
        ++digit[k];
        break;
      }
      digit[k] = 0;
    }
    if (k == digit.size()) break;
  }

  report.pass = report.violations.empty();
  return report;
}

RankReport verify_full_rank(const Word& w, const Polynomial& f) {
  RankReport r;
  CoeffMatrix m = CoeffMatrix::from_polynomial(f, w);
  r.rows = m.rows();
  r.cols = m.cols();
  r.rank = exact_rank(m);
  r.full = r.rank == std::min(r.rows, r.cols);
  int b = 0;
  for (int e : w.entries()) b = std::max(b, std::abs(e));
  r.cert_lhs = Int(static_cast<unsigned long>(r.rank)) * Int(static_cast<unsigned long>(r.rank)) *
               (Int(1) << b);
  r.cert_rhs = Int(static_cast<unsigned long>(r.rows)) * Int(static_cast<unsigned long>(r.cols));
  r.cert_ok = r.cert_lhs >= r.cert_rhs;
  return r;
}

} // namespace kslab
