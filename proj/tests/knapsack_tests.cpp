#include "doctest.h"

#include "kslab/error.hpp"
#include "kslab/knapsack.hpp"
#include "testutil.hpp"

#include <set>

using namespace kslab;

namespace {

Word figure_word() { return Word(std::vector<int>{-3, 6, -2, -4, 2, 6, -4, -2}); }

Polynomial V(const char* name) { return Polynomial::var(VariableId::parse(name)); }

} // namespace

TEST_SUITE("knapsack") {

TEST_CASE("the smallest two-block instance") {
  KsInstance ks = build_ks(Word(std::vector<int>{1, -1}));
  CHECK(ks.beta == Rat(-1));
  CHECK_FALSE(ks.flipped);
  CHECK(ks.oriented == ks.w);
  Polynomial expect = V("x.1.0") * V("y.2.0") + V("x.1.1") * V("y.2.1") + Polynomial::one();
  CHECK(ks.p == expect);
}

TEST_CASE("orientation flips words whose positive side is wider") {
  Word wide_pos(std::vector<int>{2, -1});
  CHECK(needs_flip(wide_pos));
  CHECK(oriented_word(wide_pos) == Word(std::vector<int>{-2, 1}));
  KsInstance ks = build_ks(wide_pos);
  CHECK(ks.flipped);
  CHECK(ks.oriented == Word(std::vector<int>{-2, 1}));
  // The built polynomial sums over the positive side of the oriented word.
  CHECK(ks.p == V("x.2.0") * (V("y.1.00") + V("y.1.01")) +
                    V("x.2.1") * (V("y.1.10") + V("y.1.11")) + Polynomial::one());

  CHECK_FALSE(needs_flip(Word(std::vector<int>{1, -1})));   // equal widths stay
  CHECK_FALSE(needs_flip(Word(std::vector<int>{1, -2})));
  CHECK(oriented_word(Word(std::vector<int>{1, -2})) == Word(std::vector<int>{1, -2}));
}

TEST_CASE("lift factors multiply overlapping block sums") {
  Word w = figure_word();
  auto iv = w.intervals();
  // Block 5 spans [7,8], inside B4 = [6,9]: the lift sums the four
  // y.4-variables agreeing with sigma on positions 7 and 8.
  Polynomial lift = lift_factor(w, 5, BitString::over(iv.A[4], 0b01));
  CHECK(lift == V("y.4.0010") + V("y.4.0011") + V("y.4.1010") + V("y.4.1011"));
  // Block 2 spans [1,6], touching B1, B3 and B4.
  Polynomial l2 = lift_factor(w, 2, BitString::over(iv.A[1], 0b110100));
  CHECK(l2 == V("y.1.110") * V("y.3.10") *
                  (V("y.4.0000") + V("y.4.0001") + V("y.4.0010") + V("y.4.0011") +
                   V("y.4.0100") + V("y.4.0101") + V("y.4.0110") + V("y.4.0111")));
  CHECK_THROWS_AS(lift_factor(w, 4, BitString::over(iv.B[3], 0)), error);  // lift-side block
}

TEST_CASE("knapsack terms count the index choices of the figure word") {
  KsInstance ks = build_ks(figure_word(), default_beta(), 256);
  // 64 sigma * 8 free bits + 4 * 4 + 64 * 16, plus the constant.
  CHECK(ks.p.size() == 512 + 16 + 1024 + 1);
  CHECK(ks.p.degree() == 4);  // x * (y.1 y.3 y.4 product) on block 2
  CHECK(ks.p.coeff(Monomial::one()) == 1);
}

TEST_CASE("beta values attainable on the cube are rejected with a witness") {
  Word w(std::vector<int>{1, -1});
  CHECK_THROWS_WITH_AS(build_ks(w, Rat(0)), doctest::Contains("Boolean root"), error);
  CHECK_THROWS_WITH_AS(build_ks(w, Rat(1)), doctest::Contains("Boolean root"), error);
  CHECK_THROWS_AS(build_ks(w, Rat(2)), error);
  // Out-of-range or fractional values need no cube walk.
  CHECK_NOTHROW(build_ks(w, Rat(3)));
  CHECK_NOTHROW(build_ks(w, Rat(1, 2)));
  CHECK_NOTHROW(build_ks(w, Rat(-7)));
  CHECK_THROWS_AS(build_ks(figure_word()), error);  // over the default cap
}

TEST_CASE("collapse substitution reproduces the pinned two-block case") {
  Word w = figure_word();
  Monomial m = Monomial::from_factors({{VariableId::parse("y.1.100"), 1},
                                       {VariableId::parse("y.4.1001"), 1},
                                       {VariableId::parse("y.7.0110"), 1},
                                       {VariableId::parse("y.8.11"), 1}});
  CHECK(collapse_support(w, {1, 4, 7, 8}) == std::set<int>{5, 6});
  CHECK(collapse_support(w, {1, 3, 4, 7, 8}) == std::set<int>{2, 5, 6});
  CHECK(collapse_support(w, {}) == std::set<int>{});

  KsInstance ks = build_ks(w, default_beta(), 256);
  Polynomial collapsed = ks.p.substitute(tau_m(w, m));
  CHECK(collapsed == V("x.5.00") + V("x.6.101101") + Polynomial::one());
  CHECK(collapsed == collapsed_ks(w, m, ks.beta));

  CHECK_THROWS_AS(tau_m(w, Monomial::var(VariableId::parse("x.5.00"))), error);
}

TEST_CASE("collapse identity across all lift subsets of a small word") {
  Word w(std::vector<int>{2, -2, 1, -1});
  REQUIRE(is_balanced(w).balanced);
  KsInstance ks = build_ks(w);
  auto neg = w.negative_positions();
  int checked = 0;
  for (unsigned pick = 0; pick < (1u << neg.size()); ++pick) {
    std::set<int> T;
    for (std::size_t j = 0; j < neg.size(); ++j)
      if ((pick >> j) & 1u) T.insert(neg[j]);
    for (const Monomial& m : sml_monomials(w, Side::negative, T)) {
      CHECK(ks.p.substitute(tau_m(w, m)) == collapsed_ks(w, m, ks.beta));
      ++checked;
    }
  }
  CHECK(checked == (1 + 4) * (1 + 2));  // (empty or 2^2) x (empty or 2^1)
}

TEST_CASE("generic degree-4 instance") {
  GenericInstance gen = generic_subset_sum(2, Rat(-1));
  CHECK(gen.n == 2);
  CHECK(gen.p.size() == 6);  // 5 coefficient monomials + the constant
  CHECK(gen.p.coeff(Monomial::one()) == 1);
  Monomial m = Monomial::from_factors(
      {{VariableId::x(1), 3}, {VariableId::x(2), 1}, {VariableId::z(1, 1, 1, 2), 1}});
  CHECK(gen.p.coeff(m) == 1);
  CHECK(gen.p.degree() == 5);
  CHECK(generic_subset_sum(3, Rat(-1)).p.size() == 15 + 1);
}

TEST_CASE("embedding into the generic instance is exact") {
  for (auto entries : {std::vector<int>{1, -1}, {2, -1}, {1, -2}, {2, -2, 1, -1}}) {
    KsInstance ks = build_ks(Word(entries));
    REQUIRE(ks.p.degree() <= 4);
    Embedding em = tau_w_embedding(ks);
    GenericInstance gen = generic_subset_sum(em.n, ks.beta);
    CHECK(apply_embedding(gen, em) == ks.p);
    // Every assigned value is 0 or 1 and every z-variable is covered.
    std::size_t z_assigned = 0;
    for (const auto& [v, val] : em.assignment) {
      CHECK((val == Polynomial::zero() || val == Polynomial::one()));
      if (v.role == VarRole::Z) ++z_assigned;
    }
    CHECK(em.assignment.size() == z_assigned + 1);  // plus the padding x.n
  }
}

TEST_CASE("a degree-four instance embeds exactly") {
  KsInstance ks = build_ks(Word(std::vector<int>{-1, 3, -1, -1}));
  CHECK(ks.p.degree() == 4);
  Embedding em = tau_w_embedding(ks);
  CHECK(apply_embedding(generic_subset_sum(em.n, ks.beta), em) == ks.p);
}

TEST_CASE("embedding rejects beta inside the generic range") {
  // A beta inside {0, ..., n^4} collides with values the generic instance
  // attains on the cube; it is rejected even though ks itself admits it.
  KsInstance ks = build_ks(Word(std::vector<int>{1, -1}), Rat(3));
  CHECK_THROWS_AS(tau_w_embedding(ks), error);
}

} // TEST_SUITE
