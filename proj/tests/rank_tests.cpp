#include "doctest.h"

#include "kslab/boolean_inverse.hpp"
#include "kslab/error.hpp"
#include "kslab/knapsack.hpp"
#include "kslab/rank_checks.hpp"
#include "testutil.hpp"

using namespace kslab;

namespace {

Polynomial V(const char* name) { return Polynomial::var(VariableId::parse(name)); }

CoeffMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols,
                          int rank_target) {
  // Product of random rows x k and k x cols factors, so the rank is at most
  // rank_target; entries stay small rationals.
  CoeffMatrix m(rows, cols);
  std::vector<Rat> left(rows * static_cast<std::size_t>(rank_target));
  std::vector<Rat> right(static_cast<std::size_t>(rank_target) * cols);
  for (auto& q : left) q = testutil::random_rat(g, 3, 2);
  for (auto& q : right) q = testutil::random_rat(g, 3, 2);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      Rat s(0);
      for (int k = 0; k < rank_target; ++k)
        s += left[r * static_cast<std::size_t>(rank_target) + static_cast<std::size_t>(k)] *
             right[static_cast<std::size_t>(k) * cols + c];
      m.at(r, c) = s;
    }
  return m;
}

} // namespace

TEST_SUITE("rank") {

TEST_CASE("coefficient matrix of the two-block inverse") {
  Word w(std::vector<int>{1, -1});
  KsInstance ks = build_ks(w);
  Polynomial f = boolean_inverse(ks.p);
  CoeffMatrix m = CoeffMatrix::from_polynomial(f, w);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  // f = 1 - x0 y0 / 2 - x1 y1 / 2 + x0 x1 y0 y1 / 3; the matrix keeps the
  // one-variable-per-block part: rows x.1.0 / x.1.1, columns y.2.0 / y.2.1.
  CHECK(m.at(0, 0) == f.coeff(Monomial::from_factors(
                          {{VariableId::parse("x.1.0"), 1}, {VariableId::parse("y.2.0"), 1}})));
  CHECK(m.at(0, 0) == Rat(-1, 2));
  CHECK(m.at(0, 1) == 0);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.at(1, 1) == Rat(-1, 2));
  CHECK(exact_rank(m) == 2);

  CHECK(CoeffMatrix::row_monomial(w, 1) == Monomial::var(VariableId::parse("x.1.1")));
  CHECK(CoeffMatrix::col_monomial(w, 0) == Monomial::var(VariableId::parse("y.2.0")));
}

TEST_CASE("matrix entries live exactly at their labelled monomials") {
  Word w(std::vector<int>{2, -1, -1});
  auto g = testutil::rng(1111);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = static_cast<std::size_t>(testutil::random_int(g, 0, 3));
    std::size_t c = static_cast<std::size_t>(testutil::random_int(g, 0, 3));
    Rat coeff = testutil::random_nonzero_rat(g);
    Polynomial p = Polynomial::term(CoeffMatrix::row_monomial(w, r) * CoeffMatrix::col_monomial(w, c),
                                    coeff);
    CoeffMatrix m = CoeffMatrix::from_polynomial(p, w);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        CHECK(m.at(i, j) == ((i == r && j == c) ? coeff : Rat(0)));
  }
  // Terms that are not full set-multilinear products are ignored.
  CoeffMatrix z = CoeffMatrix::from_polynomial(V("x.1.00") + Polynomial::one(), w);
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) CHECK(z.at(i, j) == 0);
}

TEST_CASE("exact rank agrees with a plain rational elimination oracle") {
  auto g = testutil::rng(1212);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t rows = static_cast<std::size_t>(testutil::random_int(g, 1, 6));
    std::size_t cols = static_cast<std::size_t>(testutil::random_int(g, 1, 6));
    int target = testutil::random_int(g, 0, static_cast<int>(std::min(rows, cols)));
    CoeffMatrix m = random_matrix(g, rows, cols, target);
    std::size_t oracle = testutil::gauss_rank_rational(m);
    CHECK(exact_rank(m) == oracle);
    CHECK(oracle <= static_cast<std::size_t>(target));
  }
}

TEST_CASE("modular rank never exceeds the exact rank and usually attains it") {
  auto g = testutil::rng(1313);
  for (int trial = 0; trial < 1000; ++trial) {
    CoeffMatrix m = random_matrix(g, 4, 4, testutil::random_int(g, 0, 4));
    std::size_t exact = testutil::gauss_rank_rational(m);
    for (std::uint64_t p : {1000003ull, 2147483647ull}) {
      std::size_t modular = rank_mod_p(m, p);
      CHECK(modular <= exact);
    }
    CHECK(rank_mod_p(m, 2305843009213693951ull) == exact);  // 61-bit prime: no collisions here
  }
  CoeffMatrix half(1, 1);
  half.at(0, 0) = Rat(1, 5);
  CHECK_THROWS_AS(rank_mod_p(half, 5), error);  // denominator divisible by p
  CHECK(exact_rank(half) == 1);                 // exact path shrugs it off
}

TEST_CASE("set-multilinear projection is linear and idempotent") {
  Word w(std::vector<int>{1, -1});
  Polynomial full = V("x.1.0") * V("y.2.0");
  Polynomial partial = V("x.1.0");
  Polynomial mixed = Rat(3) * full + Rat(5) * partial + Polynomial::one();
  CHECK(project_sml(mixed, w) == Rat(3) * full);
  CHECK(project_sml(project_sml(mixed, w), w) == project_sml(mixed, w));

  auto g = testutil::rng(1414);
  std::vector<VariableId> pool{VariableId::parse("x.1.0"), VariableId::parse("x.1.1"),
                               VariableId::parse("y.2.0"), VariableId::parse("y.2.1")};
  for (int i = 0; i < 1000; ++i) {
    Polynomial a = testutil::random_poly(g, pool, 6, 2);
    Polynomial b = testutil::random_poly(g, pool, 6, 2);
    Rat c = testutil::random_rat(g);
    CHECK(project_sml(a + b, w) == project_sml(a, w) + project_sml(b, w));
    CHECK(project_sml(a.scaled(c), w) == project_sml(a, w).scaled(c));
    CHECK(project_sml(project_sml(a, w), w) == project_sml(a, w));
  }
}

TEST_CASE("coefficient extraction by lift-side monomial") {
  Word w(std::vector<int>{1, -1});
  KsInstance ks = build_ks(w);
  Polynomial f = boolean_inverse(ks.p);
  // f's terms with negative part exactly y.2.0 are -1/2 * x.1.0 * y.2.0.
  Polynomial gm = extract_g_m(f, w, Monomial::var(VariableId::parse("y.2.0")));
  CHECK(gm == Rat(-1, 2) * V("x.1.0"));
  Polynomial g1 = extract_g_m(f, w, Monomial::one());
  CHECK(g1 == Polynomial::one());  // 1/(-beta) with beta = -1
  CHECK_THROWS_AS(extract_g_m(f, w, Monomial::var(VariableId::parse("x.1.0"))), error);
}

TEST_CASE("leading-monomial claim on small balanced words") {
  for (auto entries : {std::vector<int>{1, -1}, {-1, 1}, {2, -2}, {2, -2, 1, -1}}) {
    Word w(entries);
    KsInstance ks = build_ks(w);
    Polynomial f = boolean_inverse(ks.p);
    for (MonomialOrder o : {MonomialOrder::grlex, MonomialOrder::lex}) {
      ClaimReport rep = verify_leading_claim(ks.oriented, f, o);
      CHECK(rep.pass);
      CHECK(rep.violations.empty());
      CHECK(rep.checked > 0);
    }
  }
}

TEST_CASE("the claim check notices planted violations") {
  Word w(std::vector<int>{1, -1});
  KsInstance ks = build_ks(w);
  Polynomial f = boolean_inverse(ks.p);
  // Overshoot the bound for m = y.2.1: its g_m may only reach x.1.1, and
  // x.1.0 beats x.1.1 in every order here (smaller ids are more
  // significant), so a x.1.0 * y.2.1 term breaks the claim.
  Polynomial bad = f + V("x.1.0") * V("y.2.1");
  ClaimReport rep = verify_leading_claim(w, bad, MonomialOrder::grlex);
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations.front().m == Monomial::var(VariableId::parse("y.2.1")));

  // Killing the full-side coefficient breaks the equality requirement.
  Monomial top = Monomial::from_factors(
      {{VariableId::parse("x.1.1"), 1}, {VariableId::parse("y.2.1"), 1}});
  Polynomial flat = f - Polynomial::term(top, f.coeff(top));
  ClaimReport rep2 = verify_leading_claim(w, flat, MonomialOrder::grlex);
  CHECK_FALSE(rep2.pass);
}

TEST_CASE("claim bound monomial of the pinned example") {
  Word w(std::vector<int>{-3, 6, -2, -4, 2, 6, -4, -2});
  Monomial m = Monomial::from_factors({{VariableId::parse("y.1.100"), 1},
                                       {VariableId::parse("y.4.1001"), 1},
                                       {VariableId::parse("y.7.0110"), 1},
                                       {VariableId::parse("y.8.11"), 1}});
  CHECK(claim_bound_monomial(w, m) ==
        Monomial::from_factors({{VariableId::parse("x.5.00"), 1},
                                {VariableId::parse("x.6.101101"), 1}}));
}

TEST_CASE("full-rank verdicts carry the relative-rank certificate") {
  Word w(std::vector<int>{1, -1});
  KsInstance ks = build_ks(w);
  RankReport r = verify_full_rank(w, boolean_inverse(ks.p));
  CHECK(r.rows == 2);
  CHECK(r.cols == 2);
  CHECK(r.rank == 2);
  CHECK(r.full);
  CHECK(r.cert_lhs == 8);  // rank^2 * 2^b = 4 * 2
  CHECK(r.cert_rhs == 4);  // rows * cols
  CHECK(r.cert_ok);

  // The certificate can fail while the rank report is still honest data.
  RankReport flat = verify_full_rank(w, Polynomial::one());
  CHECK(flat.rank == 0);
  CHECK_FALSE(flat.full);
  CHECK_FALSE(flat.cert_ok);
}

} // TEST_SUITE
