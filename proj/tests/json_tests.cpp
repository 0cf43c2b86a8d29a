#include "doctest.h"

#include "kslab/error.hpp"
#include "kslab/ips.hpp"
#include "kslab/json_io.hpp"
#include "kslab/rank_checks.hpp"
#include "testutil.hpp"

#include <cstdio>
#include <filesystem>

using namespace kslab;

TEST_SUITE("json") {

TEST_CASE("polynomial serialization is exact and canonical") {
  Polynomial p = Rat(-1, 3) * Polynomial::var(VariableId::x(1), 2) +
                 Rat(7, 2) * Polynomial::var(VariableId::parse("y.2.01")) + Polynomial::one();
  Json j = poly_to_json(p);
  CHECK(poly_from_json(j) == p);
  REQUIRE(j.contains("terms"));
  CHECK(j.at("terms").size() == 3);

  auto g = testutil::rng(1818);
  std::vector<VariableId> pool{VariableId::x(1), VariableId::parse("x.2.10"),
                               VariableId::y(3), VariableId::z(1, 2, 3, 4), VariableId::v(2)};
  for (int i = 0; i < 1000; ++i) {
    Polynomial q = testutil::random_poly(g, pool, 7, 4, 30);
    CHECK(poly_from_json(poly_to_json(q)) == q);
  }
}

TEST_CASE("unordered or duplicated terms canonicalize on read") {
  Json j = Json::parse(R"({"terms": [
    {"coeff": "1/2", "monomial": {"x.2": 1}},
    {"coeff": "1/1", "monomial": {"x.1": 1, "x.2": 0}},
    {"coeff": "1/2", "monomial": {"x.2": 1}}
  ]})");
  Polynomial p = poly_from_json(j);
  CHECK(p == Polynomial::var(VariableId::x(1)) + Polynomial::var(VariableId::x(2)));
}

TEST_CASE("malformed polynomial JSON is rejected") {
  for (const char* text : {
           R"({"terms": [{"coeff": "1/0", "monomial": {}}]})",
           R"({"terms": [{"coeff": "1/1", "monomial": {"bogus": 1}}]})",
           R"({"terms": [{"coeff": "1/1", "monomial": {"x.1": -2}}]})",
           R"({"terms": [{"monomial": {"x.1": 1}}]})",
           R"({"terms": 7})",
           R"([1, 2, 3])",
       })
    CHECK_THROWS_AS(poly_from_json(Json::parse(text)), error);
}

TEST_CASE("words serialize as entry arrays") {
  Word w(std::vector<int>{2, -1, 0, -3});
  CHECK(word_to_json(w) == Json::parse("[2, -1, 0, -3]"));
  CHECK(word_from_json(word_to_json(w)) == w);
  CHECK_THROWS_AS(word_from_json(Json::parse(R"("nope")")), error);
  CHECK_THROWS_AS(word_from_json(Json::parse("[1, 99]")), error);  // entry out of range
}

TEST_CASE("statement round-trip with and without explicit target") {
  IpsStatement stmt;
  stmt.axioms = {Polynomial::var(VariableId::x(1)) - Polynomial::constant(Rat(2))};
  stmt.bool_vars = {VariableId::x(1)};
  Json j = statement_to_json(stmt);
  IpsStatement back = statement_from_json(j);
  CHECK(back.axioms == stmt.axioms);
  CHECK(back.bool_vars == stmt.bool_vars);
  CHECK(back.target == Polynomial::one());

  Json no_target = Json{{"axioms", Json::array({poly_to_json(stmt.axioms[0])})},
                        {"bool_vars", Json::array({"x.1"})}};
  CHECK(statement_from_json(no_target).target == Polynomial::one());

  stmt.target = Polynomial::var(VariableId::x(1));
  CHECK(statement_from_json(statement_to_json(stmt)).target == stmt.target);
}

TEST_CASE("report objects expose their headline fields") {
  IpsVerdict v;
  v.pass = false;
  v.violated = IpsCondition::certifies_target;
  v.detail = "witness";
  Json vj = verdict_to_json(v);
  CHECK(vj.at("pass") == false);
  CHECK(vj.at("violated") == "certifies-target");
  CHECK(vj.at("exact") == true);

  RankReport r;
  r.rows = 2;
  r.cols = 3;
  r.rank = 2;
  r.full = true;
  r.cert_lhs = 8;
  r.cert_rhs = 6;
  r.cert_ok = true;
  Json rj = rank_report_to_json(r);
  CHECK(rj.at("rank") == 2);
  CHECK(rj.at("cert").at("lhs") == "8");
  CHECK(rj.at("cert").at("ok") == true);

  ClaimReport c;
  c.pass = false;
  c.checked = 4;
  c.violations.push_back({Monomial::var(VariableId::y(1)), "too big"});
  Json cj = claim_report_to_json(c);
  CHECK(cj.at("checked") == 4);
  CHECK(cj.at("violations").size() == 1);

  PitReport p;
  p.equal = true;
  p.trials = 16;
  p.per_trial_bound = Rat(1, 8);
  p.overall_bound = Rat(1, 64);
  Json pj = pit_report_to_json(p);
  CHECK(pj.at("trials") == 16);
  CHECK(pj.at("per_trial_bound") == "1/8");
}

TEST_CASE("files round-trip through load and save") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "kslab_json_io_test.json";
  Polynomial p = Rat(3, 4) * Polynomial::var(VariableId::x(2)) - Polynomial::one();
  save_json(tmp.string(), poly_to_json(p));
  CHECK(poly_from_json(load_json(tmp.string())) == p);
  fs::remove(tmp);
  CHECK_THROWS_AS(load_json((fs::temp_directory_path() / "missing_kslab.json").string()), error);
}

} // TEST_SUITE
