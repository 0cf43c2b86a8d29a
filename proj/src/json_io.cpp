// JSON encodings for the public data types.  Readers validate structure and
// references and report problems as io errors with a concrete location;
// writers emit the canonical form, so serialization round-trips exactly.

#include "kslab/json_io.hpp"

#include "kslab/error.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kslab {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(errc::io, what); }

} // namespace

Json poly_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const Term& t : p.terms()) {
    Json mono = Json::object();
    for (const VarExp& e : t.mono.factors()) mono[e.var.name()] = e.exp;
    terms.push_back(Json{{"coeff", rat_to_string(t.coeff)}, {"monomial", std::move(mono)}});
  }
  return Json{{"terms", std::move(terms)}};
}

Polynomial poly_from_json(const Json& j) {
  try {
    std::vector<Term> terms;
    for (const Json& tj : j.at("terms")) {
      Rat c = rat_from_string(tj.at("coeff").get<std::string>());
      std::vector<VarExp> factors;
      for (const auto& [name, exp] : tj.at("monomial").items()) {
        if (!exp.is_number_integer()) bad("the exponent of " + name + " is not an integer");
        const std::int64_t e = exp.get<std::int64_t>();
        if (e < 0 || e > 1'000'000) bad("the exponent of " + name + " is out of range");
        factors.push_back({VariableId::parse(name), static_cast<int>(e)});
      }
      terms.push_back({Monomial::from_factors(std::move(factors)), std::move(c)});
    }
    return Polynomial::from_terms(std::move(terms));
  } catch (const Json::exception& e) {
    bad(std::string("malformed polynomial: ") + e.what());
  }
}

Json word_to_json(const Word& w) { return Json(w.entries()); }

Word word_from_json(const Json& j) {
  if (!j.is_array()) bad("a word must be an array of integers");
  std::vector<int> entries;
  for (const Json& e : j) {
    if (!e.is_number_integer()) bad("a word must be an array of integers");
    const std::int64_t v = e.get<std::int64_t>();
    if (v < -62 || v > 62) bad("word entries must stay within +-62");
    entries.push_back(static_cast<int>(v));
  }
  return Word(std::move(entries));
}

Json circuit_to_json(const Circuit& c) {
  const std::size_t n = c.measures().size;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId id = static_cast<NodeId>(i);
    Json nj{{"id", i}};
    switch (c.op(id)) {
      case Circuit::Op::var:
        nj["op"] = "var";
        nj["name"] = c.var_of(id).name();
        break;
      case Circuit::Op::constant:
        nj["op"] = "const";
        nj["value"] = rat_to_string(c.const_of(id));
        break;
      case Circuit::Op::sum: {
        nj["op"] = "sum";
        Json args = Json::array();
        for (std::size_t k = 0; k < c.fanin(id); ++k)
          args.push_back(Json::array({c.child(id, k), rat_to_string(c.sum_coeff(id, k))}));
        nj["args"] = std::move(args);
        break;
      }
      case Circuit::Op::prod: {
        nj["op"] = "prod";
        Json args = Json::array();
        for (std::size_t k = 0; k < c.fanin(id); ++k) args.push_back(c.child(id, k));
        nj["args"] = std::move(args);
        break;
      }
    }
    nodes.push_back(std::move(nj));
  }
  return Json{{"nodes", std::move(nodes)}, {"output", c.output()}};
}

Circuit circuit_from_json(const Json& j) {
  try {
    const Json& nodes = j.at("nodes");
    if (!nodes.is_array() || nodes.empty()) bad("a circuit needs a non-empty node array");
    std::map<std::int64_t, const Json*> by_id;
    for (const Json& nj : nodes) {
      const std::int64_t id = nj.at("id").get<std::int64_t>();
      if (!by_id.emplace(id, &nj).second) bad("duplicate node id " + std::to_string(id));
    }
    auto children_of = [&](const Json& nj) {
      std::vector<std::int64_t> kids;
      const std::string op = nj.at("op").get<std::string>();
      if (op == "sum") {
        for (const Json& a : nj.at("args")) kids.push_back(a.at(0).get<std::int64_t>());
      } else if (op == "prod") {
        for (const Json& a : nj.at("args")) kids.push_back(a.get<std::int64_t>());
      } else if (op != "var" && op != "const") {
        bad("unknown node op '" + op + "'");
      }
      if ((op == "sum" || op == "prod") && kids.empty())
        bad("a " + op + " node needs at least one argument");
      return kids;
    };

    // Kahn's algorithm over the id graph, smallest ready id first so the
    // renumbering is deterministic; leftovers mean a cycle.
    std::map<std::int64_t, int> waiting;
    std::map<std::int64_t, std::vector<std::int64_t>> parents;
    std::set<std::int64_t> ready;
    for (const auto& [id, nj] : by_id) {
      const auto kids = children_of(*nj);
      for (const std::int64_t k : kids) {
        if (!by_id.count(k))
          bad("node " + std::to_string(id) + " references the unknown node " + std::to_string(k));
        parents[k].push_back(id);
      }
      waiting[id] = static_cast<int>(kids.size());
      if (kids.empty()) ready.insert(id);
    }
    Circuit c;
    std::map<std::int64_t, NodeId> built;
    while (!ready.empty()) {
      const std::int64_t id = *ready.begin();
      ready.erase(ready.begin());
      const Json& nj = *by_id.at(id);
      const std::string op = nj.at("op").get<std::string>();
      if (op == "var") {
        built[id] = c.add_var(VariableId::parse(nj.at("name").get<std::string>()));
      } else if (op == "const") {
        built[id] = c.add_const(rat_from_string(nj.at("value").get<std::string>()));
      } else if (op == "sum") {
        std::vector<Circuit::SumArg> args;
        for (const Json& a : nj.at("args"))
          args.push_back({built.at(a.at(0).get<std::int64_t>()),
                          rat_from_string(a.at(1).get<std::string>())});
        built[id] = c.add_sum(args);
      } else {
        std::vector<NodeId> args;
        for (const Json& a : nj.at("args")) args.push_back(built.at(a.get<std::int64_t>()));
        built[id] = c.add_prod(args);
      }
      for (const std::int64_t p : parents[id])
        if (--waiting[p] == 0) ready.insert(p);
    }
    if (built.size() != by_id.size()) bad("the node graph contains a cycle");
    const std::int64_t out = j.at("output").get<std::int64_t>();
    const auto it = built.find(out);
    if (it == built.end()) bad("output references the unknown node " + std::to_string(out));
    c.set_output(it->second);
    return c;
  } catch (const Json::exception& e) {
    bad(std::string("malformed circuit: ") + e.what());
  }
}

Json statement_to_json(const IpsStatement& s) {
  Json ax = Json::array();
  for (const Polynomial& f : s.axioms) ax.push_back(poly_to_json(f));
  Json bv = Json::array();
  for (const VariableId& v : s.bool_vars) bv.push_back(v.name());
  return Json{{"axioms", std::move(ax)},
              {"bool_vars", std::move(bv)},
              {"target", poly_to_json(s.target)}};
}

IpsStatement statement_from_json(const Json& j) {
  try {
    IpsStatement s;
    for (const Json& aj : j.at("axioms")) s.axioms.push_back(poly_from_json(aj));
    if (j.contains("bool_vars"))
      for (const Json& vj : j.at("bool_vars"))
        s.bool_vars.push_back(VariableId::parse(vj.get<std::string>()));
    if (j.contains("target")) s.target = poly_from_json(j.at("target"));
    return s;
  } catch (const Json::exception& e) {
    bad(std::string("malformed statement: ") + e.what());
  }
}

Json verdict_to_json(const IpsVerdict& v) {
  Json j{{"pass", v.pass},
         {"exact", v.exact},
         {"detail", v.detail},
         {"error_bound", rat_to_string(v.error_bound)}};
  j["violated"] = v.violated ? Json(ips_condition_to_string(*v.violated)) : Json(nullptr);
  return j;
}

Json rank_report_to_json(const RankReport& r) {
  return Json{{"rows", r.rows},
              {"cols", r.cols},
              {"rank", r.rank},
              {"full", r.full},
              {"cert", Json{{"lhs", r.cert_lhs.get_str()},
                            {"rhs", r.cert_rhs.get_str()},
                            {"ok", r.cert_ok}}}};
}

Json claim_report_to_json(const ClaimReport& r) {
  Json vs = Json::array();
  for (const ClaimViolation& v : r.violations)
    vs.push_back(Json{{"monomial", v.m.str()}, {"reason", v.reason}});
  return Json{{"pass", r.pass}, {"checked", r.checked}, {"violations", std::move(vs)}};
}

Json pit_report_to_json(const PitReport& r) {
  return Json{{"equal", r.equal},
              {"trials", r.trials},
              {"per_trial_bound", rat_to_string(r.per_trial_bound)},
              {"overall_bound", rat_to_string(r.overall_bound)},
              {"counterexample", r.counterexample}};
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(errc::io, "cannot parse " + path + ": " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "cannot write " + path);
  out << j.dump(2) << '\n';
}

} // namespace kslab
