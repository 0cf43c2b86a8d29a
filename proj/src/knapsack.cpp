#include "kslab/knapsack.hpp"

#include "kslab/error.hpp"

#include <algorithm>

namespace kslab {

Rat default_beta() { return Rat(-1); }

bool needs_flip(const Word& w) { return w.negative_total() < w.positive_total(); }

Word oriented_word(const Word& w) {
  if (!needs_flip(w)) return w;
  std::vector<int> neg;
  neg.reserve(static_cast<std::size_t>(w.d()));
  for (int e : w.entries()) neg.push_back(-e);
  return Word(std::move(neg));
}

Polynomial lift_factor(const Word& oriented, int i, const BitString& sigma) {
  if (oriented.entry(i) < 0) fail(errc::domain, "lift index is on the lift side of the word");
  auto iv = oriented.intervals();
  const Interval& A = iv.A[static_cast<std::size_t>(i - 1)];
  {
    std::vector<long> expect;
    for (long t = A.lo; t <= A.hi; ++t) expect.push_back(t);
    if (sigma.positions() != expect)
      fail(errc::domain, "index string does not cover the block interval");
  }
  Polynomial prod = Polynomial::one();
  for (int j = 1; j <= oriented.d(); ++j) {
    if (oriented.entry(j) >= 0) continue;
    const Interval& B = iv.B[static_cast<std::size_t>(j - 1)];
    if (!B.intersects(A)) continue;
    std::vector<long> free_pos;
    for (long t = B.lo; t <= B.hi; ++t)
      if (!A.contains(t)) free_pos.push_back(t);
    if (free_pos.size() > 24) fail(errc::cap, "lift factor too large to expand");
    std::vector<Term> sum;
    sum.reserve(1ull << free_pos.size());
    for (unsigned long long mask = 0; mask < (1ull << free_pos.size()); ++mask) {
      std::vector<long> pos;
      std::vector<bool> bits;
      std::size_t r = 0;
      for (long t = B.lo; t <= B.hi; ++t) {
        pos.push_back(t);
        if (A.contains(t)) {
          bits.push_back(sigma.at(t));
        } else {
          bits.push_back((mask >> (free_pos.size() - 1 - r)) & 1u);
          ++r;
        }
      }
      VariableId y = block_variable(oriented, j, BitString(std::move(pos), std::move(bits)));
      sum.push_back({Monomial::var(y), Rat(1)});
    }
    prod = prod * Polynomial::from_terms(std::move(sum));
  }
  return prod;
}

namespace {

// Exact Boolean-root check for the (multilinear, 0/1-coefficient) variable
// part against an integer beta in [0, max attainable value].  Walks the cube
// with a subset-sum zeta transform over the support.
std::optional<Assignment> find_boolean_root(const Polynomial& var_part, const Rat& beta) {
  auto vars = var_part.support();
  std::size_t n = vars.size();
  if (n > 24) fail(errc::cap, "beta admissibility check over too many variables");
  std::vector<long> vals(1ull << n, 0);
  for (const auto& t : var_part.terms()) {
    unsigned long long mask = 0;
    for (const auto& f : t.mono.factors()) {
      std::size_t idx = static_cast<std::size_t>(
          std::lower_bound(vars.begin(), vars.end(), f.var) - vars.begin());
      mask |= 1ull << idx;
    }
    vals[mask] += static_cast<long>(t.coeff.get_num().get_si());
  }
  for (std::size_t b = 0; b < n; ++b)
    for (unsigned long long m = 0; m < (1ull << n); ++m)
      if (m & (1ull << b)) vals[m] += vals[m ^ (1ull << b)];
  long target = static_cast<long>(beta.get_num().get_si());
  for (unsigned long long m = 0; m < (1ull << n); ++m)
    if (vals[m] == target) {
      Assignment a;
      for (std::size_t idx = 0; idx < n; ++idx)
        a[vars[idx]] = Rat(static_cast<int>((m >> idx) & 1u));
      return a;
    }
  return std::nullopt;
}

} // namespace

KsInstance build_ks(const Word& w, const Rat& beta, long var_cap) {
  KsInstance inst;
  inst.w = w;
  inst.oriented = oriented_word(w);
  inst.flipped = needs_flip(w);
  inst.beta = beta;
  if (w.var_count() > var_cap)
    fail(errc::cap, "word needs " + std::to_string(w.var_count()) + " variables, cap is " +
                        std::to_string(var_cap));

  const Word& ow = inst.oriented;
  auto iv = ow.intervals();
  std::vector<Term> terms;
  for (int i : ow.positive_positions()) {
    const Interval& A = iv.A[static_cast<std::size_t>(i - 1)];
    for (unsigned long long v = 0; v < (1ull << A.width()); ++v) {
      BitString sigma = BitString::over(A, v);
      Polynomial x = Polynomial::var(block_variable(ow, i, sigma));
      Polynomial prod = x * lift_factor(ow, i, sigma);
      for (const auto& t : prod.terms()) terms.push_back(t);
    }
  }
  Polynomial var_part = Polynomial::from_terms(std::move(terms));

  // beta is admissible iff the instance has no Boolean root.  The variable
  // part is a sum of 0/1 products, so values range over a subset of
  // {0, ..., #terms}; anything outside is safe without enumeration.
  bool maybe_root = beta.get_den() == 1 && beta >= 0 && beta <= static_cast<long>(var_part.size());
  if (maybe_root) {
    auto root = find_boolean_root(var_part, beta);
    if (root) {
      std::string pt;
      for (const auto& [v, val] : *root) {
        if (!pt.empty()) pt += ", ";
        pt += v.name() + "=" + val.get_num().get_str();
      }
      fail(errc::domain, "beta = " + rat_to_string(beta) + " has a Boolean root at {" + pt + "}");
    }
  }

  inst.p = var_part - Polynomial::constant(beta);
  return inst;
}

Substitution tau_m(const Word& oriented, const Monomial& m) {
  auto T = sml_support(m, oriented, Side::negative);
  if (!T) fail(errc::domain, "collapse monomial is not set-multilinear over the lift side");
  Substitution s;
  for (int j : oriented.negative_positions())
    for (const auto& v : block_variables(oriented, j))
      s[v] = Polynomial::zero();
  for (const auto& f : m.factors()) s[f.var] = Polynomial::one();
  return s;
}

std::set<int> collapse_support(const Word& oriented, const std::set<int>& T) {
  auto iv = oriented.intervals();
  std::set<int> S;
  for (int i : oriented.positive_positions()) {
    const Interval& A = iv.A[static_cast<std::size_t>(i - 1)];
    bool inside = true;
    for (long t = A.lo; t <= A.hi && inside; ++t) {
      bool covered = false;
      for (int j : T)
        if (iv.B[static_cast<std::size_t>(j - 1)].contains(t)) {
          covered = true;
          break;
        }
      inside = covered;
    }
    if (inside) S.insert(i);
  }
  return S;
}

Polynomial collapsed_ks(const Word& oriented, const Monomial& m, const Rat& beta) {
  auto T = sml_support(m, oriented, Side::negative);
  if (!T) fail(errc::domain, "collapse monomial is not set-multilinear over the lift side");
  BitString sigma = string_of_monomial(m, oriented, Side::negative);
  auto iv = oriented.intervals();
  std::vector<Term> terms;
  for (int i : collapse_support(oriented, *T)) {
    const Interval& A = iv.A[static_cast<std::size_t>(i - 1)];
    terms.push_back({Monomial::var(block_variable(oriented, i, sigma.restrict_to(A))), Rat(1)});
  }
  return Polynomial::from_terms(std::move(terms)) - Polynomial::constant(beta);
}

GenericInstance generic_subset_sum(int n, const Rat& beta) {
  if (n < 1) fail(errc::domain, "generic instance needs n >= 1");
  if (n > 40) fail(errc::cap, "generic instance too large");
  Int n4 = Int(n) * n * n * n;
  if (beta.get_den() == 1 && beta >= 0 && beta.get_num() <= n4)
    fail(errc::domain, "beta = " + rat_to_string(beta) + " must avoid {0, ..., n^4}");
  GenericInstance gen;
  gen.n = n;
  gen.beta = beta;
  std::vector<Term> terms;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        for (int l = k; l <= n; ++l) {
          Monomial m = Monomial::from_factors({{VariableId::z(i, j, k, l), 1},
                                               {VariableId::x(i), 1},
                                               {VariableId::x(j), 1},
                                               {VariableId::x(k), 1},
                                               {VariableId::x(l), 1}});
          terms.push_back({std::move(m), Rat(1)});
        }
  gen.p = Polynomial::from_terms(std::move(terms)) - Polynomial::constant(beta);
  return gen;
}

Embedding tau_w_embedding(const KsInstance& ks) {
  if (ks.p.degree() > 4) fail(errc::domain, "instance degree exceeds 4, cannot embed");
  // Collect the word variables in increasing order; x.n is the padding slot.
  std::vector<VariableId> vars = ks.p.support();
  int n = static_cast<int>(vars.size()) + 1;
  Int n4 = Int(n) * n * n * n;
  if (ks.beta.get_den() == 1 && ks.beta >= 0 && ks.beta.get_num() <= n4)
    fail(errc::domain, "beta = " + rat_to_string(ks.beta) + " must avoid {0, ..., n^4}");

  Embedding e;
  e.n = n;
  for (int t = 1; t < n; ++t)
    e.renaming[VariableId::x(t)] = vars[static_cast<std::size_t>(t - 1)];

  // Default every z to 0, then switch on the tuple of each instance term.
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        for (int l = k; l <= n; ++l)
          e.assignment[VariableId::z(i, j, k, l)] = Polynomial::zero();
  e.assignment[VariableId::x(n)] = Polynomial::one();

  for (const auto& t : ks.p.terms()) {
    if (t.mono.is_one()) continue;  // the -beta constant
    if (t.coeff != 1) fail(errc::domain, "instance term has a non-unit coefficient");
    std::vector<int> idx;
    for (const auto& f : t.mono.factors()) {
      if (f.exp != 1) fail(errc::domain, "instance term is not multilinear");
      auto it = std::lower_bound(vars.begin(), vars.end(), f.var);
      idx.push_back(static_cast<int>(it - vars.begin()) + 1);
    }
    while (idx.size() < 4) idx.push_back(n);
    e.assignment[VariableId::z(idx[0], idx[1], idx[2], idx[3])] = Polynomial::one();
  }
  return e;
}

Polynomial apply_embedding(const GenericInstance& gen, const Embedding& e) {
  Substitution s = e.assignment;
  for (const auto& [from, to] : e.renaming) s[from] = Polynomial::var(to);
  return gen.p.substitute(s);
}

} // namespace kslab
