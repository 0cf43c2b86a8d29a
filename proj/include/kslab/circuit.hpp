#pragma once

#include "kslab/polynomial.hpp"

#include <cstdint>
#include <vector>

namespace kslab {

using NodeId = std::uint32_t;

constexpr std::size_t kDefaultExpansionCap = 1'000'000;

// An algebraic circuit over the rationals: variable and constant leaves,
// fan-in >= 1 sum gates with a rational coefficient per incoming wire, and
// fan-in >= 1 product gates.  Children always have smaller ids than their
// parents, so the node order is topological and the graph is acyclic by
// construction.
class Circuit {
public:
  enum class Op : std::uint8_t { var, constant, sum, prod };

  struct SumArg {
    NodeId node;
    Rat coeff;
  };

  NodeId add_var(const VariableId& v);
  NodeId add_const(Rat c);
  NodeId add_sum(const std::vector<SumArg>& args);
  NodeId add_prod(const std::vector<NodeId>& args);

  void set_output(NodeId id);
  NodeId output() const;

  std::size_t node_count() const { return nodes_.size(); }
  Op op(NodeId id) const { return node(id).op; }
  const VariableId& var_of(NodeId id) const;
  const Rat& const_of(NodeId id) const;
  std::size_t fanin(NodeId id) const;
  NodeId child(NodeId id, std::size_t k) const;
  const Rat& sum_coeff(NodeId id, std::size_t k) const;
  // Mutable wire coefficient, for perturbation experiments.
  Rat& sum_coeff_ref(NodeId id, std::size_t k);

  std::vector<VariableId> variables() const;

  struct Measures {
    std::size_t size = 0;     // number of nodes
    int depth = 0;            // longest leaf-to-output path, in edges
    int product_depth = 0;    // most product gates on such a path
  };
  Measures measures() const;

  // The polynomial computed by the circuit, optionally substituting leaf
  // variables.  Every intermediate polynomial is capped at term_cap terms.
  Polynomial expand(std::size_t term_cap = kDefaultExpansionCap) const;
  Polynomial expand(const Substitution& leaves, std::size_t term_cap) const;

  Rat evaluate(const Assignment& a) const;

  // Depth-2 sum-of-products form of a polynomial, sharing variable leaves.
  static Circuit from_polynomial(const Polynomial& p);

private:
  struct Node {
    Op op;
    std::uint32_t begin = 0, end = 0;  // arena slice (sum/prod)
    std::uint32_t aux = 0;             // index into vars_/consts_ (var/const)
  };

  const Node& node(NodeId id) const;
  NodeId push(Node n);

  std::vector<Node> nodes_;
  std::vector<VariableId> vars_;
  std::vector<Rat> consts_;
  std::vector<NodeId> prod_children_;
  std::vector<NodeId> sum_children_;
  std::vector<Rat> sum_coeffs_;
  NodeId output_ = 0;
  bool has_output_ = false;
};

} // namespace kslab
