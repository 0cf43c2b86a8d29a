#include "kslab/circuit.hpp"

#include "kslab/error.hpp"

#include <algorithm>
#include <map>

namespace kslab {

const Circuit::Node& Circuit::node(NodeId id) const {
  if (id >= nodes_.size()) fail(errc::domain, "circuit node id out of range");
  return nodes_[id];
}

NodeId Circuit::push(Node n) {
  nodes_.push_back(n);
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Circuit::add_var(const VariableId& v) {
  vars_.push_back(v);
  return push({Op::var, 0, 0, static_cast<std::uint32_t>(vars_.size() - 1)});
}

NodeId Circuit::add_const(Rat c) {
  consts_.push_back(std::move(c));
  return push({Op::constant, 0, 0, static_cast<std::uint32_t>(consts_.size() - 1)});
}

NodeId Circuit::add_sum(const std::vector<SumArg>& args) {
  if (args.empty()) fail(errc::domain, "sum gate needs at least one argument");
  auto begin = static_cast<std::uint32_t>(sum_children_.size());
  for (const auto& a : args) {
    if (a.node >= nodes_.size()) fail(errc::domain, "sum argument refers to a later node");
    sum_children_.push_back(a.node);
    sum_coeffs_.push_back(a.coeff);
  }
  return push({Op::sum, begin, static_cast<std::uint32_t>(sum_children_.size()), 0});
}

NodeId Circuit::add_prod(const std::vector<NodeId>& args) {
  if (args.empty()) fail(errc::domain, "product gate needs at least one argument");
  auto begin = static_cast<std::uint32_t>(prod_children_.size());
  for (NodeId a : args) {
    if (a >= nodes_.size()) fail(errc::domain, "product argument refers to a later node");
    prod_children_.push_back(a);
  }
  return push({Op::prod, begin, static_cast<std::uint32_t>(prod_children_.size()), 0});
}

void Circuit::set_output(NodeId id) {
  if (id >= nodes_.size()) fail(errc::domain, "output id out of range");
  output_ = id;
  has_output_ = true;
}

NodeId Circuit::output() const {
  if (!has_output_) fail(errc::domain, "circuit has no output");
  return output_;
}

const VariableId& Circuit::var_of(NodeId id) const {
  const Node& n = node(id);
  if (n.op != Op::var) fail(errc::domain, "node is not a variable leaf");
  return vars_[n.aux];
}

const Rat& Circuit::const_of(NodeId id) const {
  const Node& n = node(id);
  if (n.op != Op::constant) fail(errc::domain, "node is not a constant leaf");
  return consts_[n.aux];
}

std::size_t Circuit::fanin(NodeId id) const {
  const Node& n = node(id);
  if (n.op == Op::var || n.op == Op::constant) return 0;
  return n.end - n.begin;
}

NodeId Circuit::child(NodeId id, std::size_t k) const {
  const Node& n = node(id);
  if (n.op == Op::sum) return sum_children_[n.begin + k];
  if (n.op == Op::prod) return prod_children_[n.begin + k];
  fail(errc::domain, "leaf node has no children");
}

const Rat& Circuit::sum_coeff(NodeId id, std::size_t k) const {
  const Node& n = node(id);
  if (n.op != Op::sum) fail(errc::domain, "node is not a sum gate");
  return sum_coeffs_[n.begin + k];
}

Rat& Circuit::sum_coeff_ref(NodeId id, std::size_t k) {
  const Node& n = node(id);
  if (n.op != Op::sum) fail(errc::domain, "node is not a sum gate");
  return sum_coeffs_[n.begin + k];
}

std::vector<VariableId> Circuit::variables() const {
  std::vector<VariableId> out = vars_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Circuit::Measures Circuit::measures() const {
  Measures m;
  m.size = nodes_.size();
  std::vector<int> depth(nodes_.size(), 0), pdepth(nodes_.size(), 0);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    if (n.op == Op::var || n.op == Op::constant) continue;
    int d = 0, pd = 0;
    for (std::size_t k = 0; k < fanin(id); ++k) {
      NodeId c = child(id, k);
      d = std::max(d, depth[c]);
      pd = std::max(pd, pdepth[c]);
    }
    depth[id] = d + 1;
    pdepth[id] = pd + (n.op == Op::prod ? 1 : 0);
  }
  NodeId out = output();
  m.depth = depth[out];
  m.product_depth = pdepth[out];
  return m;
}

namespace {

void cap_check(const Polynomial& p, std::size_t cap) {
  if (p.size() > cap)
    fail(errc::cap, "circuit expansion exceeds " + std::to_string(cap) + " terms");
}

} // namespace

Polynomial Circuit::expand(std::size_t term_cap) const { return expand({}, term_cap); }

Polynomial Circuit::expand(const Substitution& leaves, std::size_t term_cap) const {
  NodeId out = output();

  // Uses counted from the output cone so single-use intermediates can be
  // freed as soon as their parent consumes them.
  std::vector<std::uint32_t> uses(nodes_.size(), 0);
  std::vector<bool> reach(nodes_.size(), false);
  {
    std::vector<NodeId> stack{out};
    reach[out] = true;
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      for (std::size_t k = 0; k < fanin(id); ++k) {
        NodeId c = child(id, k);
        ++uses[c];
        if (!reach[c]) {
          reach[c] = true;
          stack.push_back(c);
        }
      }
    }
  }

  std::vector<Polynomial> memo(nodes_.size());

  auto take = [&](NodeId c) {
    Polynomial p = (--uses[c] == 0) ? std::move(memo[c]) : memo[c];
    if (uses[c] == 0) memo[c] = Polynomial();
    return p;
  };

  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (!reach[id]) continue;
    const Node& n = nodes_[id];
    switch (n.op) {
      case Op::var: {
        auto it = leaves.find(vars_[n.aux]);
        memo[id] = (it != leaves.end()) ? it->second : Polynomial::var(vars_[n.aux]);
        break;
      }
      case Op::constant:
        memo[id] = Polynomial::constant(consts_[n.aux]);
        break;
      case Op::sum: {
        std::vector<Term> acc;
        for (std::uint32_t k = n.begin; k < n.end; ++k) {
          Polynomial p = take(sum_children_[k]);
          const Rat& c = sum_coeffs_[k];
          if (c == 0) continue;
          for (const auto& t : p.terms()) acc.push_back({t.mono, t.coeff * c});
          if (acc.size() / 64 > term_cap)
            fail(errc::cap, "circuit expansion exceeds " + std::to_string(term_cap) + " terms");
        }
        memo[id] = Polynomial::from_terms(std::move(acc));
        cap_check(memo[id], term_cap);
        break;
      }
      case Op::prod: {
        // Smallest factors first keeps intermediates small.
        std::vector<Polynomial> factors;
        for (std::uint32_t k = n.begin; k < n.end; ++k) factors.push_back(take(prod_children_[k]));
        std::sort(factors.begin(), factors.end(),
                  [](const Polynomial& a, const Polynomial& b) { return a.size() < b.size(); });
        Polynomial acc = std::move(factors.front());
        for (std::size_t k = 1; k < factors.size(); ++k) {
          acc = acc * factors[k];
          cap_check(acc, term_cap);
        }
        memo[id] = std::move(acc);
        break;
      }
    }
  }
  return std::move(memo[out]);
}

Rat Circuit::evaluate(const Assignment& a) const {
  NodeId out = output();
  std::vector<Rat> val(nodes_.size(), Rat(0));
  std::vector<bool> reach(nodes_.size(), false);
  {
    std::vector<NodeId> stack{out};
    reach[out] = true;
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      for (std::size_t k = 0; k < fanin(id); ++k) {
        NodeId c = child(id, k);
        if (!reach[c]) {
          reach[c] = true;
          stack.push_back(c);
        }
      }
    }
  }
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (!reach[id]) continue;
    const Node& n = nodes_[id];
    switch (n.op) {
      case Op::var: {
        auto it = a.find(vars_[n.aux]);
        if (it == a.end())
          fail(errc::domain, "evaluation is missing an assignment for " + vars_[n.aux].name());
        val[id] = it->second;
        break;
      }
      case Op::constant:
        val[id] = consts_[n.aux];
        break;
      case Op::sum: {
        Rat s = 0;
        for (std::uint32_t k = n.begin; k < n.end; ++k)
          s += sum_coeffs_[k] * val[sum_children_[k]];
        val[id] = std::move(s);
        break;
      }
      case Op::prod: {
        Rat s = 1;
        for (std::uint32_t k = n.begin; k < n.end; ++k) s *= val[prod_children_[k]];
        val[id] = std::move(s);
        break;
      }
    }
  }
  return val[out];
}

Circuit Circuit::from_polynomial(const Polynomial& p) {
  Circuit c;
  if (p.is_zero()) {
    c.set_output(c.add_const(Rat(0)));
    return c;
  }
  std::map<VariableId, NodeId> leaf;
  for (const auto& v : p.support()) leaf[v] = c.add_var(v);
  std::vector<SumArg> args;
  NodeId one = 0;
  bool has_one = false;
  for (const auto& t : p.terms()) {
    if (t.mono.is_one()) {
      if (!has_one) {
        one = c.add_const(Rat(1));
        has_one = true;
      }
      args.push_back({one, t.coeff});
      continue;
    }
    std::vector<NodeId> kids;
    for (const auto& f : t.mono.factors())
      for (int e = 0; e < f.exp; ++e) kids.push_back(leaf[f.var]);
    args.push_back({kids.size() == 1 ? kids[0] : c.add_prod(kids), t.coeff});
  }
  c.set_output(c.add_sum(args));
  return c;
}

} // namespace kslab
