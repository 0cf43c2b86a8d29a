#pragma once

#include "kslab/circuit.hpp"
#include "kslab/json_io.hpp"
#include "kslab/knapsack.hpp"
#include "kslab/order.hpp"
#include "kslab/word.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kslab {

// The word grid: every entry vector with 1 <= d <= dmax and entries in
// [-bmax, bmax], ordered by length then lexicographically.  dmax = 0 gives
// the empty grid.
std::vector<Word> enumerate_words(int dmax, int bmax);

struct ExperimentConfig {
  int dmax = 3;
  int bmax = 2;
  long var_cap = 18;  // rows above it are marked SKIPPED, never dropped
  std::size_t expansion_cap = kDefaultExpansionCap;
  std::optional<Rat> beta;  // overrides the built-in default of -1
  std::vector<MonomialOrder> orders = {MonomialOrder::grlex, MonomialOrder::lex};
  bool with_refutations = false;
  std::uint64_t seed = 0;
  int jobs = 1;
  int degree_law_nmax = 8;
  std::vector<Word> extra_words;  // appended after the grid
};

struct RowResult {
  Word word;
  bool balanced = false;
  bool skipped = false;
  std::string skip_reason;
  std::size_t rows = 0, cols = 0, rank = 0;
  bool full = false;
  bool cert_ok = false;
  bool claim_ok = false;       // all configured orders; unbalanced rows skip it
  bool collapse_ok = false;
  bool embed_ok = false;
  bool refutation_ok = false;  // meaningful only with with_refutations
  double seconds = 0;

  // Whether the row counts as passing: unbalanced rows carry rank data only
  // and always do, skipped rows never do.
  bool counted_pass(bool with_refutations) const;
};

struct SuiteReport {
  ExperimentConfig config;
  std::vector<RowResult> rows;
  bool degree_law_ok = false;
  std::size_t pass_count = 0, fail_count = 0, skip_count = 0;
  bool all_ok = false;
};

// Runs rank, certificate, leading-monomial, collapse and embedding checks
// (plus optional refutation round-trips) over the whole grid.
SuiteReport run_suite(const ExperimentConfig& cfg);

std::string suite_csv(const SuiteReport& rep);
Json suite_json(const SuiteReport& rep);

} // namespace kslab
