// Grid experiments: sweep a family of words, run every checker on each row,
// and render the results as CSV (rank summary) and JSON (full verdicts).

#include "kslab/experiment.hpp"

#include "kslab/boolean_inverse.hpp"
#include "kslab/error.hpp"
#include "kslab/ips.hpp"
#include "kslab/rank_checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace kslab {

std::vector<Word> enumerate_words(int dmax, int bmax) {
  if (dmax < 0 || bmax < 0) fail(errc::domain, "the word grid needs dmax >= 0 and bmax >= 0");
  std::vector<Word> out;
  for (int d = 1; d <= dmax; ++d) {
    // Odometer over {-bmax..bmax}^d, last entry fastest.
    std::vector<int> entries(d, -bmax);
    while (true) {
      out.emplace_back(entries);
      int i = d - 1;
      while (i >= 0 && entries[i] == bmax) entries[i--] = -bmax;
      if (i < 0) break;
      ++entries[i];
    }
  }
  return out;
}

namespace {

bool check_collapses(const KsInstance& ks) {
  const auto neg = ks.oriented.negative_positions();
  const std::set<int> full(neg.begin(), neg.end());
  for (const Monomial& m : sml_monomials(ks.oriented, Side::negative, full)) {
    const Polynomial lhs = ks.p.substitute(tau_m(ks.oriented, m));
    if (!(lhs == collapsed_ks(ks.oriented, m, ks.beta))) return false;
  }
  return true;
}

bool check_embedding(const KsInstance& ks) {
  if (ks.p.degree() > 4) return true;  // outside the embedding's scope
  const Embedding em = tau_w_embedding(ks);
  const GenericInstance gen = generic_subset_sum(em.n, ks.beta);
  return apply_embedding(gen, em) == ks.p;
}

bool check_refutation(const Polynomial& axiom, const ExperimentConfig& cfg) {
  const Refutation ref = build_refutation(axiom, cfg.var_cap);
  VerifyOptions vo;
  vo.expansion_cap = cfg.expansion_cap;
  vo.allow_pit = false;  // the round-trip must certify exactly
  vo.seed = cfg.seed;
  const IpsVerdict v = verify_ips(ref.proof, ref.stmt, ref.cls, vo);
  return v.pass && v.exact;
}

RowResult run_row(const Word& w, const ExperimentConfig& cfg) {
  RowResult row;
  row.word = w;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    row.balanced = is_balanced(w).balanced;
    if (w.var_count() > cfg.var_cap) {
      row.skipped = true;
      row.skip_reason = "variable count " + std::to_string(w.var_count()) +
                        " exceeds the cap " + std::to_string(cfg.var_cap);
    } else {
      const KsInstance ks = build_ks(w, cfg.beta ? *cfg.beta : default_beta(), cfg.var_cap);
      const Polynomial f = boolean_inverse(ks.p, cfg.var_cap);
      const RankReport rr = verify_full_rank(ks.oriented, f);
      row.rows = rr.rows;
      row.cols = rr.cols;
      row.rank = rr.rank;
      row.full = rr.full;
      row.cert_ok = rr.cert_ok;
      if (row.balanced) {
        row.claim_ok = true;
        for (MonomialOrder o : cfg.orders)
          row.claim_ok = row.claim_ok && verify_leading_claim(ks.oriented, f, o).pass;
        row.collapse_ok = check_collapses(ks);
        row.embed_ok = check_embedding(ks);
        if (cfg.with_refutations) row.refutation_ok = check_refutation(ks.p, cfg);
      }
    }
  } catch (const error& e) {
    row.skipped = true;
    row.skip_reason = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

// deg(boolean_inverse(x1 + ... + xn - (n+1))) should hit the n-variable
// ceiling; a cheap canary that the inversion pipeline keeps top terms.  The
// suite-wide variable cap bounds the check like everything else.
bool degree_law_holds(int nmax, long var_cap) {
  nmax = static_cast<int>(std::min<long>(nmax, var_cap));
  for (int n = 1; n <= nmax; ++n) {
    Polynomial f;
    for (int i = 1; i <= n; ++i) f = f + Polynomial::var(VariableId::x(i));
    f = f - Polynomial::constant(Rat(n + 1));
    if (boolean_inverse(f, var_cap).degree() != n) return false;
  }
  return true;
}

} // namespace

bool RowResult::counted_pass(bool with_refutations) const {
  if (skipped) return false;
  if (!balanced) return true;  // rank is reported as data only
  bool ok = full && cert_ok && claim_ok && collapse_ok && embed_ok;
  if (with_refutations) ok = ok && refutation_ok;
  return ok;
}

SuiteReport run_suite(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.config = cfg;
  std::vector<Word> words = enumerate_words(cfg.dmax, cfg.bmax);
  words.insert(words.end(), cfg.extra_words.begin(), cfg.extra_words.end());
  rep.rows.resize(words.size());

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || words.size() <= 1) {
    for (std::size_t i = 0; i < words.size(); ++i) rep.rows[i] = run_row(words[i], cfg);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < words.size(); i = next.fetch_add(1))
        rep.rows[i] = run_row(words[i], cfg);
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  rep.degree_law_ok = degree_law_holds(cfg.degree_law_nmax, cfg.var_cap);
  for (const RowResult& r : rep.rows) {
    if (r.skipped)
      ++rep.skip_count;
    else if (r.counted_pass(cfg.with_refutations))
      ++rep.pass_count;
    else
      ++rep.fail_count;
  }
  rep.all_ok = rep.fail_count == 0 && rep.degree_law_ok;
  return rep;
}

std::string suite_csv(const SuiteReport& rep) {
  std::ostringstream os;
  os << "word,dims,rank,full_rank?,relrk_cert?,lm_claim?,seconds\n";
  for (const RowResult& r : rep.rows) {
    os << '"' << r.word.str() << "\",";
    if (r.skipped) {
      os << "-,-,skipped,skipped,skipped,";
    } else {
      os << r.rows << 'x' << r.cols << ',' << r.rank << ','
         << (r.full ? "yes" : "no") << ',' << (r.cert_ok ? "yes" : "no") << ','
         << (!r.balanced ? "n/a" : r.claim_ok ? "yes" : "no") << ',';
    }
    os << std::fixed << std::setprecision(3) << r.seconds << '\n';
  }
  return os.str();
}

Json suite_json(const SuiteReport& rep) {
  Json rows = Json::array();
  for (const RowResult& r : rep.rows) {
    Json rj{{"word", word_to_json(r.word)},
            {"balanced", r.balanced},
            {"seconds", r.seconds}};
    if (r.skipped) {
      rj["skipped"] = r.skip_reason;
    } else {
      rj["rank"] = Json{{"rows", r.rows},
                        {"cols", r.cols},
                        {"rank", r.rank},
                        {"full", r.full},
                        {"cert_ok", r.cert_ok}};
      if (r.balanced) {
        rj["lm_claim"] = r.claim_ok;
        rj["collapse"] = r.collapse_ok;
        rj["embedding"] = r.embed_ok;
        if (rep.config.with_refutations) rj["refutation"] = r.refutation_ok;
      }
    }
    rows.push_back(std::move(rj));
  }
  Json orders = Json::array();
  for (MonomialOrder o : rep.config.orders) orders.push_back(order_to_string(o));
  const Rat beta = rep.config.beta ? *rep.config.beta : default_beta();
  return Json{{"schema_version", 1},
              {"config",
               Json{{"dmax", rep.config.dmax},
                    {"bmax", rep.config.bmax},
                    {"var_cap", rep.config.var_cap},
                    {"expansion_cap", rep.config.expansion_cap},
                    {"beta", rat_to_string(beta)},
                    {"orders", std::move(orders)},
                    {"with_refutations", rep.config.with_refutations},
                    {"seed", rep.config.seed},
                    {"jobs", rep.config.jobs}}},
              {"summary",
               Json{{"pass", rep.pass_count},
                    {"fail", rep.fail_count},
                    {"skipped", rep.skip_count},
                    {"degree_law", rep.degree_law_ok},
                    {"all_ok", rep.all_ok}}},
              {"rows", std::move(rows)}};
}

} // namespace kslab
