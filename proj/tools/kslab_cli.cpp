// Command-line front end: word and knapsack generators, Boolean inversion,
// rank and certificate checks, IPS proof verification, and the grid
// experiment driver.  All subcommands exit 0 on success, 1 when a check
// fails, and 2 on malformed or out-of-range input.

#include "CLI11.hpp"

#include "kslab/boolean_inverse.hpp"
#include "kslab/circuit.hpp"
#include "kslab/error.hpp"
#include "kslab/experiment.hpp"
#include "kslab/ips.hpp"
#include "kslab/json_io.hpp"
#include "kslab/knapsack.hpp"
#include "kslab/rank_checks.hpp"
#include "kslab/word.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace kslab;

// Accepts "(2,-1)", "2,-1", or a path to a word JSON file.
Word read_word(const std::string& text) {
  if (std::filesystem::exists(text)) return word_from_json(load_json(text));
  std::string flat;
  for (char ch : text)
    if (ch != '(' && ch != ')' && ch != '[' && ch != ']' && !std::isspace(static_cast<unsigned char>(ch)))
      flat += ch;
  std::vector<int> entries;
  std::stringstream ss(flat);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      entries.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(errc::io, "cannot read '" + tok + "' as a word entry");
    }
  }
  if (entries.empty()) fail(errc::io, "empty word literal '" + text + "'");
  return Word(entries);
}

Polynomial read_poly(const std::string& path) { return poly_from_json(load_json(path)); }

void write_out(const std::string& path, const Json& j) {
  save_json(path, j);
  std::cout << "wrote " << path << "\n";
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

void print_word_report(const Word& w) {
  std::cout << "word: " << w.str() << "\n";
  std::cout << "blocks: " << w.d() << ", variables: " << w.var_count() << " ("
            << w.positive_var_count() << " positive, " << w.negative_var_count()
            << " negative)\n";
  std::cout << "totals: +" << w.positive_total() << " / -" << w.negative_total() << "\n";
  const auto iv = w.intervals();
  for (int i = 1; i <= w.d(); ++i) {
    const Interval& b = w.entry(i) >= 0 ? iv.A[static_cast<std::size_t>(i - 1)]
                                        : iv.B[static_cast<std::size_t>(i - 1)];
    std::cout << "  block " << i << (w.entry(i) >= 0 ? " (A)" : " (B)") << ": ";
    if (b.empty())
      std::cout << "empty\n";
    else
      std::cout << "[" << b.lo << "," << b.hi << "]\n";
  }
  const BalanceResult bal = is_balanced(w);
  std::cout << "balanced: " << yesno(bal.balanced);
  if (!bal.balanced && bal.witness)
    std::cout << " (uncovered " << (bal.witness->a_side ? "A" : "B") << "-interval at position "
              << bal.witness->index << ")";
  std::cout << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for interval knapsack polynomials"};
  app.require_subcommand(1);

  long cap = kDefaultVarCap;
  std::size_t expansion_cap = kDefaultExpansionCap;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string order_name = "grlex";
  app.add_option("--cap", cap, "variable-count cap for expensive operations")
      ->envname("KSLAB_CAP")
      ->capture_default_str();
  app.add_option("--expansion-cap", expansion_cap, "term cap for circuit expansion")
      ->envname("KSLAB_EXPANSION_CAP")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized identity testing")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads for the experiment driver")
      ->capture_default_str();
  auto* order_opt = app.add_option("--order", order_name, "monomial order: grlex or lex")
                        ->check(CLI::IsMember({"grlex", "lex"}))
                        ->capture_default_str();

  int rc = 0;

  // ---- word gen / word check ----
  auto* word_cmd = app.add_subcommand("word", "generate or inspect words");
  word_cmd->require_subcommand(1);

  auto* word_gen = word_cmd->add_subcommand("gen", "deterministic balanced word of shape (d, k)");
  int gen_d = 0, gen_k = 0;
  std::string word_gen_out;
  word_gen->add_option("--d", gen_d, "number of blocks")->required();
  word_gen->add_option("--k", gen_k, "entry magnitude budget")->required();
  word_gen->add_option("--out", word_gen_out, "write the word as JSON");
  word_gen->callback([&] {
    const Word w = gen_balanced_word(gen_d, gen_k);
    print_word_report(w);
    if (!word_gen_out.empty()) write_out(word_gen_out, word_to_json(w));
  });

  auto* word_check = word_cmd->add_subcommand("check", "balance and interval report");
  std::string word_check_arg;
  word_check->add_option("word", word_check_arg, "word literal like '(2,-1)' or a JSON file")
      ->required();
  word_check->callback([&] {
    const Word w = read_word(word_check_arg);
    print_word_report(w);
    if (!is_balanced(w).balanced) rc = 1;
  });

  // ---- ks ----
  auto* ks_cmd = app.add_subcommand("ks", "build the knapsack polynomial of a word");
  std::string ks_word, ks_beta = "-1", ks_out;
  ks_cmd->add_option("--word", ks_word, "word literal or JSON file")->required();
  ks_cmd->add_option("--beta", ks_beta, "right-hand side (rational)")->capture_default_str();
  ks_cmd->add_option("--out", ks_out, "write the polynomial as JSON");
  ks_cmd->callback([&] {
    const KsInstance ks = build_ks(read_word(ks_word), rat_from_string(ks_beta), cap);
    std::cout << "word: " << ks.w.str() << "\n";
    if (ks.flipped) std::cout << "oriented as: " << ks.oriented.str() << "\n";
    std::cout << "beta: " << rat_to_string(ks.beta) << "\n";
    std::cout << "terms: " << ks.p.size() << ", degree: " << ks.p.degree()
              << ", variables: " << ks.p.support().size() << "\n";
    if (!ks_out.empty()) write_out(ks_out, poly_to_json(ks.p));
  });

  // ---- inverse ----
  auto* inv_cmd = app.add_subcommand("inverse", "Boolean inverse of a polynomial");
  std::string inv_poly, inv_out;
  inv_cmd->add_option("--poly", inv_poly, "polynomial JSON file")->required();
  inv_cmd->add_option("--out", inv_out, "write the inverse as JSON");
  inv_cmd->callback([&] {
    const Polynomial g = boolean_inverse(read_poly(inv_poly), cap);
    std::cout << "terms: " << g.size() << ", degree: " << g.degree() << "\n";
    if (!inv_out.empty()) write_out(inv_out, poly_to_json(g));
  });

  // ---- rank ----
  auto* rank_cmd = app.add_subcommand("rank", "rank of the coefficient matrix of f over a word");
  std::string rank_poly, rank_word;
  bool rank_require_full = false;
  rank_cmd->add_option("--poly", rank_poly, "polynomial JSON file")->required();
  rank_cmd->add_option("--word", rank_word, "word literal or JSON file")->required();
  rank_cmd->add_flag("--full", rank_require_full, "exit 1 unless the rank is full");
  rank_cmd->callback([&] {
    const RankReport r = verify_full_rank(read_word(rank_word), read_poly(rank_poly));
    std::cout << "matrix: " << r.rows << "x" << r.cols << ", rank: " << r.rank
              << ", full: " << yesno(r.full) << "\n";
    if (rank_require_full && !r.full) rc = 1;
  });

  // ---- relrk ----
  auto* relrk_cmd = app.add_subcommand("relrk", "relative-rank certificate for f over a word");
  std::string relrk_poly, relrk_word;
  relrk_cmd->add_option("--poly", relrk_poly, "polynomial JSON file")->required();
  relrk_cmd->add_option("--word", relrk_word, "word literal or JSON file")->required();
  relrk_cmd->callback([&] {
    const RankReport r = verify_full_rank(read_word(relrk_word), read_poly(relrk_poly));
    std::cout << "rank^2 * 2^b = " << r.cert_lhs.get_str() << "\n";
    std::cout << "rows * cols  = " << r.cert_rhs.get_str() << "\n";
    std::cout << "certificate: " << (r.cert_ok ? "holds" : "fails") << "\n";
    if (!r.cert_ok) rc = 1;
  });

  // ---- verify-ips ----
  auto* ips_cmd = app.add_subcommand("verify-ips", "check an IPS proof circuit");
  std::string ips_circuit, ips_axioms, ips_class = "general";
  std::optional<unsigned> ips_pit;
  bool ips_no_pit = false;
  ips_cmd->add_option("--circuit", ips_circuit, "proof circuit JSON file")->required();
  ips_cmd->add_option("--axioms", ips_axioms, "statement JSON file (axioms, bool_vars, target)")
      ->required();
  ips_cmd->add_option("--class", ips_class, "proof class: general, linear, lips, or mlips")
      ->check(CLI::IsMember({"general", "linear", "lips", "mlips"}))
      ->capture_default_str();
  ips_cmd->add_option("--pit", ips_pit, "trials for randomized identity testing past the cap");
  ips_cmd->add_flag("--no-pit", ips_no_pit, "never degrade to randomized testing");
  ips_cmd->callback([&] {
    const Circuit proof = circuit_from_json(load_json(ips_circuit));
    const IpsStatement stmt = statement_from_json(load_json(ips_axioms));
    VerifyOptions vo;
    vo.expansion_cap = expansion_cap;
    vo.allow_pit = !ips_no_pit;
    vo.seed = seed;
    if (ips_pit) vo.pit_trials = *ips_pit;
    const IpsVerdict v = verify_ips(proof, stmt, ips_class_from_string(ips_class), vo);
    if (v.pass) {
      std::cout << "PASS";
      if (!v.exact)
        std::cout << " (randomized; error probability <= " << v.error_bound.get_d() << ")";
      std::cout << "\n";
      if (!v.detail.empty()) std::cout << v.detail << "\n";
    } else {
      std::cout << "FAIL";
      if (v.violated) std::cout << " [" << ips_condition_to_string(*v.violated) << "]";
      std::cout << ": " << v.detail << "\n";
      rc = 1;
    }
  });

  // ---- refute ----
  auto* ref_cmd = app.add_subcommand("refute", "build the canonical proof circuit for an axiom");
  std::string ref_poly, ref_word, ref_beta = "-1", ref_circuit_out, ref_stmt_out;
  ref_cmd->add_option("--poly", ref_poly, "axiom polynomial JSON file");
  ref_cmd->add_option("--word", ref_word, "word literal or JSON file (builds its instance)");
  ref_cmd->add_option("--beta", ref_beta, "right-hand side when --word is used")
      ->capture_default_str();
  ref_cmd->add_option("--circuit-out", ref_circuit_out, "write the proof circuit as JSON")
      ->required();
  ref_cmd->add_option("--statement-out", ref_stmt_out, "write the statement as JSON")->required();
  ref_cmd->callback([&] {
    if (ref_poly.empty() == ref_word.empty())
      throw CLI::ValidationError("refute", "give exactly one of --poly and --word");
    const Polynomial f = ref_poly.empty()
                             ? build_ks(read_word(ref_word), rat_from_string(ref_beta), cap).p
                             : read_poly(ref_poly);
    const Refutation ref = build_refutation(f, cap);
    const Circuit::Measures m = ref.proof.measures();
    std::cout << "class: " << ips_class_to_string(ref.cls) << "\n";
    std::cout << "circuit: " << m.size << " nodes, depth " << m.depth << ", product depth "
              << m.product_depth << "\n";
    write_out(ref_circuit_out, circuit_to_json(ref.proof));
    write_out(ref_stmt_out, statement_to_json(ref.stmt));
  });

  // ---- experiment full-rank ----
  auto* exp_cmd = app.add_subcommand("experiment", "grid sweeps over word families");
  exp_cmd->require_subcommand(1);
  auto* exp_fr = exp_cmd->add_subcommand("full-rank", "rank/claim/collapse/embedding sweep");
  ExperimentConfig ecfg;
  std::string exp_out, exp_json_out, exp_beta;
  std::vector<std::string> exp_extra;
  exp_fr->add_option("--dmax", ecfg.dmax, "maximum word length")->capture_default_str();
  exp_fr->add_option("--bmax", ecfg.bmax, "maximum entry magnitude")->capture_default_str();
  exp_fr->add_option("--out", exp_out, "CSV report path")->required();
  exp_fr->add_option("--json", exp_json_out, "full JSON report path");
  exp_fr->add_option("--beta", exp_beta, "right-hand side override (rational)");
  exp_fr->add_flag("--with-refutations", ecfg.with_refutations,
                   "also round-trip a refutation per balanced row");
  exp_fr->add_option("--word", exp_extra, "extra word rows (literal or JSON file)");
  exp_fr->callback([&] {
    ecfg.var_cap = cap;
    ecfg.expansion_cap = expansion_cap;
    ecfg.seed = seed;
    ecfg.jobs = jobs;
    if (!exp_beta.empty()) ecfg.beta = rat_from_string(exp_beta);
    if (order_opt->count() > 0) ecfg.orders = {order_from_string(order_name)};
    for (const std::string& s : exp_extra) ecfg.extra_words.push_back(read_word(s));
    const SuiteReport rep = run_suite(ecfg);
    std::ofstream csv(exp_out);
    if (!csv) fail(errc::io, "cannot open " + exp_out);
    csv << suite_csv(rep);
    std::cout << "wrote " << exp_out << "\n";
    if (!exp_json_out.empty()) write_out(exp_json_out, suite_json(rep));
    std::cout << "rows: " << rep.rows.size() << " (pass " << rep.pass_count << ", fail "
              << rep.fail_count << ", skipped " << rep.skip_count << ")\n";
    std::cout << "degree law: " << (rep.degree_law_ok ? "holds" : "fails") << "\n";
    if (!rep.all_ok) rc = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
