#include "kslab/boolean_inverse.hpp"

#include "kslab/error.hpp"
#include "kslab/multilinear.hpp"

#include <algorithm>
#include <set>

namespace kslab {

namespace {

using std::size_t;
using i128 = __int128;

Int mpz_from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 x = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  Int hi(static_cast<unsigned long>(x >> 64));
  Int out = (hi << 64) + Int(static_cast<unsigned long>(x));
  return neg ? -out : out;
}

[[noreturn]] void fail_root(const std::vector<VariableId>& vars, unsigned long long mask) {
  std::string pt;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (!pt.empty()) pt += ", ";
    pt += vars[i].name() + "=" + (((mask >> i) & 1u) ? "1" : "0");
  }
  fail(errc::domain, "polynomial has a Boolean root at {" + pt + "}");
}

// Integer lane: usable when all reduced coefficients are integers of
// moderate size and the lcm of the cube values stays small enough that the
// scaled Moebius transform fits a signed 128-bit accumulator.
std::optional<Polynomial> inverse_int_lane(const Polynomial& rem,
                                           const std::vector<VariableId>& vars) {
  size_t n = vars.size();
  Int total_abs = 0;
  for (const auto& t : rem.terms()) {
    if (t.coeff.get_den() != 1) return std::nullopt;
    total_abs += abs(t.coeff.get_num());
  }
  if (total_abs >= Int(1) << 56) return std::nullopt;

  std::vector<long long> vals(1ull << n, 0);
  for (const auto& t : rem.terms()) {
    unsigned long long mask = 0;
    for (const auto& f : t.mono.factors())
      mask |= 1ull << static_cast<size_t>(
                  std::lower_bound(vars.begin(), vars.end(), f.var) - vars.begin());
    vals[mask] += t.coeff.get_num().get_si();
  }
  for (size_t b = 0; b < n; ++b)
    for (unsigned long long m = 0; m < (1ull << n); ++m)
      if (m & (1ull << b)) vals[m] += vals[m ^ (1ull << b)];

  std::set<long long> distinct;
  for (unsigned long long m = 0; m < (1ull << n); ++m) {
    if (vals[m] == 0) fail_root(vars, m);
    distinct.insert(std::llabs(vals[m]));
    if (distinct.size() > 64) return std::nullopt;  // lcm would likely blow up
  }
  Int lcm = 1;
  for (long long v : distinct) {
    const Int vi = Int(static_cast<long>(v));
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), vi.get_mpz_t());
  }
  if (mpz_sizeinbase(lcm.get_mpz_t(), 2) > 62 || mpz_sizeinbase(lcm.get_mpz_t(), 2) + n > 120)
    return std::nullopt;
  long long d = lcm.get_si();

  std::vector<i128> u(1ull << n);
  for (unsigned long long m = 0; m < (1ull << n); ++m) u[m] = i128(d / vals[m]);
  for (size_t b = 0; b < n; ++b)
    for (unsigned long long m = 0; m < (1ull << n); ++m)
      if (m & (1ull << b)) u[m] -= u[m ^ (1ull << b)];

  std::vector<Term> terms;
  for (unsigned long long m = 0; m < (1ull << n); ++m) {
    if (u[m] == 0) continue;
    std::vector<VarExp> factors;
    for (size_t i = 0; i < n; ++i)
      if ((m >> i) & 1u) factors.push_back({vars[i], 1});
    Rat c(mpz_from_i128(u[m]), lcm);
    c.canonicalize();
    terms.push_back({Monomial::from_factors(std::move(factors)), std::move(c)});
  }
  return Polynomial::from_terms(std::move(terms));
}

Polynomial inverse_rat_lane(const Polynomial& rem, const std::vector<VariableId>& vars) {
  size_t n = vars.size();
  std::vector<Rat> vals(1ull << n, Rat(0));
  for (const auto& t : rem.terms()) {
    unsigned long long mask = 0;
    for (const auto& f : t.mono.factors())
      mask |= 1ull << static_cast<size_t>(
                  std::lower_bound(vars.begin(), vars.end(), f.var) - vars.begin());
    vals[mask] += t.coeff;
  }
  for (size_t b = 0; b < n; ++b)
    for (unsigned long long m = 0; m < (1ull << n); ++m)
      if (m & (1ull << b)) vals[m] += vals[m ^ (1ull << b)];
  for (unsigned long long m = 0; m < (1ull << n); ++m) {
    if (vals[m] == 0) fail_root(vars, m);
    mpq_inv(vals[m].get_mpq_t(), Rat(vals[m]).get_mpq_t());
  }
  for (size_t b = 0; b < n; ++b)
    for (unsigned long long m = 0; m < (1ull << n); ++m)
      if (m & (1ull << b)) vals[m] -= vals[m ^ (1ull << b)];

  std::vector<Term> terms;
  for (unsigned long long m = 0; m < (1ull << n); ++m) {
    if (vals[m] == 0) continue;
    std::vector<VarExp> factors;
    for (size_t i = 0; i < n; ++i)
      if ((m >> i) & 1u) factors.push_back({vars[i], 1});
    terms.push_back({Monomial::from_factors(std::move(factors)), vals[m]});
  }
  return Polynomial::from_terms(std::move(terms));
}

} // namespace

Polynomial boolean_inverse(const Polynomial& f, long var_cap) {
  if (f.is_zero()) fail(errc::domain, "the zero polynomial has no Boolean inverse");
  Polynomial rem = f.is_multilinear() ? f : multilinear_reduce(f).remainder;
  if (rem.is_zero()) {
    // f vanishes identically on the cube; any point witnesses the root.
    fail(errc::domain, "polynomial has a Boolean root at the all-zero point");
  }
  auto vars = rem.support();
  if (static_cast<long>(vars.size()) > var_cap)
    fail(errc::cap, "inverse needs " + std::to_string(vars.size()) + " variables, cap is " +
                        std::to_string(var_cap));
  if (auto g = inverse_int_lane(rem, vars)) return *g;
  return inverse_rat_lane(rem, vars);
}

bool verify_inverse(const Polynomial& f, const Polynomial& g) {
  if (!g.is_multilinear()) return false;
  return multilinear_reduce(g * f).remainder == Polynomial::one();
}

} // namespace kslab
