#pragma once

#include "kslab/polynomial.hpp"
#include "kslab/word.hpp"

#include <map>
#include <set>

namespace kslab {

// The subset-sum instance attached to a word.  The polynomial sums, over
// every block i on the wider side of the word (the side whose interval axis
// is at least as long), all products x^(i)_sigma * f^(i)_sigma minus beta,
// where the lift f^(i)_sigma multiplies, over each opposite block j whose
// interval meets A^(i), the sum of that block's variables agreeing with
// sigma on the overlap.  When the positive side is wider the roles of the
// two sides swap, recorded in `flipped`; the building word is then -w.
struct KsInstance {
  Polynomial p;
  Word w;         // the word as given
  Word oriented;  // w itself, or -w when flipped
  Rat beta;
  bool flipped = false;
};

Rat default_beta();  // -1, never attained by the 0/1-sum variable part

// Whether building ks_w sums over the negative side of w (roles swapped).
bool needs_flip(const Word& w);
Word oriented_word(const Word& w);

// The lift factor f^(i)_sigma of the oriented word; i must lie on the
// summation side and sigma index that block's interval.
Polynomial lift_factor(const Word& oriented, int i, const BitString& sigma);

// Builds the instance; rejects words over the variable cap and beta values
// with a Boolean root (checked exactly).
KsInstance build_ks(const Word& w, const Rat& beta = default_beta(),
                    long var_cap = kDefaultVarCap);

// The collapse substitution of a set-multilinear monomial m over blocks
// T of the lift side: variables of m go to 1, all other lift-side variables
// to 0, summation-side variables stay.  Under it ks_w collapses to
// sum_{i in S} x^(i)_(sigma(m) restricted to A^(i)) - beta with S the
// largest block set whose intervals sit inside the intervals of T.
Substitution tau_m(const Word& oriented, const Monomial& m);
std::set<int> collapse_support(const Word& oriented, const std::set<int>& T);
Polynomial collapsed_ks(const Word& oriented, const Monomial& m, const Rat& beta);

// The generic degree-4 instance  sum_{i<=j<=k<=l in [n]} z.i.j.k.l * x_i x_j
// x_k x_l - beta  over plain variables x.1 .. x.n.
struct GenericInstance {
  Polynomial p;
  int n = 0;
  Rat beta;
};
GenericInstance generic_subset_sum(int n, const Rat& beta);

// Embedding of ks_w into the generic instance: an assignment of every
// z-variable to 0/1 together with x.n := 1 (padding), plus a renaming of the
// remaining plain x-variables to the word's variables, such that applying
// both to the generic instance gives exactly ks_w.  Requires deg(ks_w) <= 4
// and beta outside {0, ..., n^4}.
struct Embedding {
  int n = 0;
  Substitution assignment;                     // all z-variables and x.n
  std::map<VariableId, VariableId> renaming;   // x.t -> word variable
};
Embedding tau_w_embedding(const KsInstance& ks);

// Applies an embedding to the generic instance (assignment, then renaming).
Polynomial apply_embedding(const GenericInstance& gen, const Embedding& e);

} // namespace kslab
