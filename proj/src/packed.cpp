#include "packed.hpp"

#include <algorithm>

namespace kslab::detail {

std::optional<PackedCtx> PackedCtx::over(std::vector<VariableId> vars) {
  if (vars.size() > static_cast<std::size_t>(max_vars)) return std::nullopt;
  for (std::size_t i = 0; i + 1 < vars.size(); ++i)
    if (!(vars[i] < vars[i + 1])) return std::nullopt;
  PackedCtx ctx;
  ctx.vars_ = std::move(vars);
  return ctx;
}

std::optional<std::uint64_t> PackedCtx::pack(const Monomial& m) const {
  if (m.degree() > 127) return std::nullopt;
  std::uint64_t key = static_cast<std::uint64_t>(m.degree()) << 57;
  std::size_t vi = 0;
  for (const auto& f : m.factors()) {
    while (vi < vars_.size() && vars_[vi] < f.var) ++vi;
    if (vi == vars_.size() || !(vars_[vi] == f.var) || f.exp > 7) return std::nullopt;
    key |= static_cast<std::uint64_t>(f.exp) << shift(static_cast<int>(vi));
  }
  return key;
}

Monomial PackedCtx::unpack(std::uint64_t key) const {
  std::vector<VarExp> factors;
  for (int i = 0; i < static_cast<int>(vars_.size()); ++i) {
    int e = exp_at(key, i);
    if (e > 0) factors.push_back({vars_[i], e});
  }
  return Monomial::from_factors(std::move(factors));
}

std::optional<PackedPoly> pack_poly(const PackedCtx& ctx, const Polynomial& p) {
  PackedPoly out;
  out.keys.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto k = ctx.pack(t.mono);
    if (!k) return std::nullopt;
    out.keys.push_back(*k);
  }
  return out;
}

} // namespace kslab::detail
