#include "kslab/polynomial.hpp"

#include "kslab/error.hpp"
#include "packed.hpp"

#include <algorithm>
#include <set>

namespace kslab {

namespace {

// Guard against runaway products; the circuit layer enforces its own,
// smaller expansion caps.
constexpr std::size_t kMaxProductPairs = 60'000'000;

bool grlex_desc(const Term& a, const Term& b) {
  return compare(a.mono, b.mono, MonomialOrder::grlex) > 0;
}

Rat rat_pow(const Rat& base, unsigned e) {
  Rat out;
  mpz_pow_ui(out.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
  return out;
}

} // namespace

Polynomial Polynomial::constant(Rat c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({Monomial::one(), std::move(c)});
  return p;
}

Polynomial Polynomial::var(VariableId v, int exp) {
  return term(Monomial::var(v, exp), 1);
}

Polynomial Polynomial::term(Monomial m, Rat c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), grlex_desc);
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
      p.terms_.back().coeff += t.coeff;
    else
      p.terms_.push_back(std::move(t));
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  }
  return p;
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : terms_.front().mono.degree();
}

int Polynomial::individual_degree(const VariableId& v) const {
  int best = 0;
  for (const auto& t : terms_) best = std::max(best, t.mono.exponent(v));
  return best;
}

std::vector<VariableId> Polynomial::support() const {
  std::set<VariableId> s;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors()) s.insert(f.var);
  return {s.begin(), s.end()};
}

bool Polynomial::is_multilinear() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.mono.is_multilinear(); });
}

Rat Polynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& mm) {
    return compare(t.mono, mm, MonomialOrder::grlex) > 0;
  });
  return (it != terms_.end() && it->mono == m) ? it->coeff : Rat(0);
}

const Monomial& Polynomial::leading_monomial(MonomialOrder order) const {
  return leading_term(order).mono;
}

const Term& Polynomial::leading_term(MonomialOrder order) const {
  if (terms_.empty()) fail(errc::domain, "leading term of the zero polynomial");
  if (order == MonomialOrder::grlex) return terms_.front();
  const Term* best = &terms_.front();
  for (const auto& t : terms_)
    if (compare(t.mono, best->mono, order) > 0) best = &t;
  return *best;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out;
  out.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    int c;
    if (a == terms_.end())
      c = -1;
    else if (b == o.terms_.end())
      c = 1;
    else
      c = compare(a->mono, b->mono, MonomialOrder::grlex);
    if (c > 0)
      out.terms_.push_back(*a++);
    else if (c < 0)
      out.terms_.push_back(*b++);
    else {
      Rat sum = a->coeff + b->coeff;
      if (sum != 0) out.terms_.push_back({a->mono, std::move(sum)});
      ++a, ++b;
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(const Rat& c) const {
  if (c == 0) return {};
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (size() == 1 && terms_[0].mono.is_one()) return o.scaled(terms_[0].coeff);
  if (o.size() == 1 && o.terms_[0].mono.is_one()) return scaled(o.terms_[0].coeff);

  std::size_t pairs = size() * o.size();
  if (pairs > kMaxProductPairs) fail(errc::cap, "polynomial product too large");

  // Fast path: both factors fit a shared packed-key context and no exponent
  // field can overflow.
  if (pairs >= 64) {
    std::set<VariableId> sup;
    for (const auto& t : terms_)
      for (const auto& f : t.mono.factors()) sup.insert(f.var);
    for (const auto& t : o.terms_)
      for (const auto& f : t.mono.factors()) sup.insert(f.var);
    if (sup.size() <= static_cast<std::size_t>(detail::PackedCtx::max_vars) &&
        degree() + o.degree() <= 127) {
      bool exp_ok = true;
      for (const auto& v : sup)
        if (individual_degree(v) + o.individual_degree(v) > 7) {
          exp_ok = false;
          break;
        }
      if (exp_ok) {
        auto ctx = detail::PackedCtx::over({sup.begin(), sup.end()});
        auto pa = detail::pack_poly(*ctx, *this);
        auto pb = detail::pack_poly(*ctx, o);
        if (pa && pb) {
          struct Pair {
            std::uint64_t key;
            std::uint32_t ai, bi;
          };
          std::vector<Pair> prod;
          prod.reserve(pairs);
          for (std::uint32_t i = 0; i < size(); ++i)
            for (std::uint32_t j = 0; j < o.size(); ++j)
              prod.push_back({pa->keys[i] + pb->keys[j], i, j});
          std::sort(prod.begin(), prod.end(),
                    [](const Pair& x, const Pair& y) { return x.key > y.key; });
          Polynomial out;
          Rat acc;
          Rat tmp;
          for (std::size_t k = 0; k < prod.size(); ++k) {
            mpq_mul(tmp.get_mpq_t(), terms_[prod[k].ai].coeff.get_mpq_t(),
                    o.terms_[prod[k].bi].coeff.get_mpq_t());
            acc += tmp;
            if (k + 1 == prod.size() || prod[k + 1].key != prod[k].key) {
              if (acc != 0) out.terms_.push_back({ctx->unpack(prod[k].key), acc});
              acc = 0;
            }
          }
          return out;
        }
      }
    }
  }

  std::vector<Term> out;
  out.reserve(pairs);
  for (const auto& ta : terms_)
    for (const auto& tb : o.terms_) out.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
  return from_terms(std::move(out));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial out = one();
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) out = out * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return out;
}

Rat Polynomial::evaluate(const Assignment& a) const {
  Rat sum = 0;
  for (const auto& t : terms_) {
    Rat prod = t.coeff;
    for (const auto& f : t.mono.factors()) {
      auto it = a.find(f.var);
      if (it == a.end())
        fail(errc::domain, "evaluation is missing an assignment for " + f.var.name());
      prod *= rat_pow(it->second, static_cast<unsigned>(f.exp));
    }
    sum += prod;
  }
  return sum;
}

Polynomial Polynomial::substitute(const Substitution& s) const {
  bool all_const = true;
  for (const auto& [v, img] : s)
    if (!(img.is_zero() || (img.size() == 1 && img.terms()[0].mono.is_one()))) {
      all_const = false;
      break;
    }

  if (all_const) {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Rat c = t.coeff;
      std::vector<VarExp> rest;
      bool dead = false;
      for (const auto& f : t.mono.factors()) {
        auto it = s.find(f.var);
        if (it == s.end()) {
          rest.push_back(f);
          continue;
        }
        if (it->second.is_zero()) {
          dead = true;
          break;
        }
        c *= rat_pow(it->second.terms()[0].coeff, static_cast<unsigned>(f.exp));
      }
      if (!dead) out.push_back({Monomial::from_factors(std::move(rest)), std::move(c)});
    }
    return from_terms(std::move(out));
  }

  std::map<std::pair<VariableId, int>, Polynomial> pow_cache;
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Polynomial prod = constant(t.coeff);
    for (const auto& f : t.mono.factors()) {
      auto it = s.find(f.var);
      if (it == s.end()) {
        prod = prod * var(f.var, f.exp);
        continue;
      }
      auto key = std::make_pair(f.var, f.exp);
      auto cached = pow_cache.find(key);
      if (cached == pow_cache.end())
        cached = pow_cache.emplace(key, it->second.pow(static_cast<unsigned>(f.exp))).first;
      prod = prod * cached->second;
    }
    for (auto& pt : prod.terms_) out.push_back(std::move(pt));
  }
  return from_terms(std::move(out));
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += rat_to_string(t.coeff);
    if (!t.mono.is_one()) out += "*" + t.mono.str();
  }
  return out;
}

DegreeProfile degree_profile(const Polynomial& p) {
  DegreeProfile d;
  d.total = p.degree();
  for (const auto& v : p.support()) d.individual[v] = p.individual_degree(v);
  return d;
}

} // namespace kslab
