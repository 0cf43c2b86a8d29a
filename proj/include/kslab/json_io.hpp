#pragma once

#include "kslab/circuit.hpp"
#include "kslab/ips.hpp"
#include "kslab/polynomial.hpp"
#include "kslab/rank_checks.hpp"
#include "kslab/word.hpp"

#include "json.hpp"

#include <string>

namespace kslab {

using Json = nlohmann::json;

// Polynomials: {"terms": [{"coeff": "-1/3", "monomial": {"x.1": 1, ...}}, ...]}.
// Reading canonicalizes (sorts, merges duplicate monomials, drops zeros), so
// write(read(j)) is a fixed point and read(write(p)) == p exactly.
Json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const Json& j);

// Words are plain integer arrays: [2, -3, 1].
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

// Circuits:
//   {"nodes": [{"id": 0, "op": "var", "name": "x.1"},
//              {"id": 1, "op": "const", "value": "5/1"},
//              {"id": 7, "op": "sum", "args": [[0, "1/1"], [1, "-2/1"]]},
//              {"id": 9, "op": "prod", "args": [7, 1]}],
//    "output": 9}
// Node ids are arbitrary; reading validates references and acyclicity and
// renumbers topologically.
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

// Statements: {"axioms": [poly...], "bool_vars": ["x.1", ...], "target": poly}.
// target is optional and defaults to the constant 1.
Json statement_to_json(const IpsStatement& s);
IpsStatement statement_from_json(const Json& j);

Json verdict_to_json(const IpsVerdict& v);
Json rank_report_to_json(const RankReport& r);
Json claim_report_to_json(const ClaimReport& r);
Json pit_report_to_json(const PitReport& r);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

} // namespace kslab
