#pragma once

#include "kslab/circuit.hpp"
#include "kslab/polynomial.hpp"
#include "kslab/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kslab {

// Proof classes, by the constraint on the polynomial computed by the proof
// circuit over the placeholders:
//   general  no constraint
//   linear   individual degree <= 1 in every axiom and Boolean placeholder
//   lips     individual degree <= 1 in every axiom placeholder only
//   mlips    the restriction to Boolean placeholders = 0 has individual
//            degree <= 1 in every variable (axiom placeholders included);
//            the Boolean part is unconstrained
enum class IpsClass { general, linear, lips, mlips };

IpsClass ips_class_from_string(const std::string& s);
std::string ips_class_to_string(IpsClass c);

// What a proof proves: the axioms f_j (referenced by the plain placeholder
// y.j, 1-based) and the Boolean axioms v^2 - v for each listed variable
// (placeholder z.k, 1-based), entailing the target (1 for a refutation).
struct IpsStatement {
  std::vector<Polynomial> axioms;
  std::vector<VariableId> bool_vars;
  Polynomial target = Polynomial::one();
};

struct VerifyOptions {
  std::size_t expansion_cap = kDefaultExpansionCap;
  bool allow_pit = true;  // degrade to randomized testing once caps are exceeded
  std::uint64_t seed = 0;
  std::size_t pit_trials = 16;
};

enum class IpsCondition { zero_at_origin, certifies_target, declared_class };
std::string ips_condition_to_string(IpsCondition c);

struct IpsVerdict {
  bool pass = false;
  bool exact = true;  // false when a probabilistic test decided a condition
  std::optional<IpsCondition> violated;
  std::string detail;       // witness description on FAIL
  Rat error_bound = Rat(0); // total failure-probability bound of PIT steps
};

// Checks the two proof conditions (vanishing at the all-zero placeholder
// point, and certifying the target once placeholders are replaced by the
// axioms) plus the declared class, all as exact polynomial identities when
// within the expansion cap, otherwise by Schwartz-Zippel tests when
// allowed.  FAIL verdicts are always exact and carry a witness.
IpsVerdict verify_ips(const Circuit& proof, const IpsStatement& stmt, IpsClass declared,
                      const VerifyOptions& opts = {});

struct Refutation {
  Circuit proof;
  IpsStatement stmt;
  IpsClass cls = IpsClass::mlips;
};

// The canonical multilinear refutation of an axiom f with no Boolean root:
// proof = g * y.1 + sum_k h_k * z.k where g is the Boolean inverse of f and
// the h_k are the reduction quotients of 1 - g*f.
Refutation build_refutation(const Polynomial& f, long var_cap = kDefaultVarCap);

// Reads g back from a proof of that shape: the expansion of the proof with
// Boolean placeholders set to 0 must equal g * y.1.
Polynomial extract_g(const Circuit& proof, const IpsStatement& stmt,
                     std::size_t expansion_cap = kDefaultExpansionCap);

struct PitReport {
  bool equal = true;
  std::size_t trials = 0;
  Rat per_trial_bound;         // degree bound / sample-domain size
  Rat overall_bound;           // per_trial_bound ^ trials
  std::string counterexample;  // point description when a trial differs
};

// Schwartz-Zippel comparison of the substituted proof against the target,
// sampling every coordinate uniformly from {0, ..., 2^64 - 1}; trial t uses
// a deterministic stream derived from (seed, t).
PitReport random_identity_test(const Circuit& proof, const IpsStatement& stmt, std::uint64_t seed,
                               std::size_t trials);

// Same test between two circuits, or a circuit and an explicit polynomial,
// over the union of their variables.  FAIL reports are always correct; a
// PASS is wrong with probability at most the reported bound.
PitReport random_identity_test(const Circuit& a, const Circuit& b, std::uint64_t seed,
                               std::size_t trials);
PitReport random_identity_test(const Circuit& a, const Polynomial& b, std::uint64_t seed,
                               std::size_t trials);

} // namespace kslab
