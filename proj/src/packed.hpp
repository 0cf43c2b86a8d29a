#pragma once

#include "kslab/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kslab::detail {

// Fixed-width packing of monomials over at most 19 variables into a u64:
// the top 7 bits hold total degree, then one 3-bit exponent field per
// variable, the smallest variable id in the most significant field.  With
// that layout unsigned integer order coincides with grlex order, and the
// key of a product is the sum of keys (valid while every per-variable
// exponent stays <= 7 and the total degree stays <= 127).
class PackedCtx {
public:
  static constexpr int max_vars = 19;

  // vars must be strictly ascending.
  static std::optional<PackedCtx> over(std::vector<VariableId> vars);

  const std::vector<VariableId>& vars() const { return vars_; }

  std::optional<std::uint64_t> pack(const Monomial& m) const;
  Monomial unpack(std::uint64_t key) const;

  std::uint64_t make_key(int var_index, int exp) const {
    return (static_cast<std::uint64_t>(exp) << 57) |
           (static_cast<std::uint64_t>(exp) << shift(var_index));
  }
  int exp_at(std::uint64_t key, int var_index) const {
    return static_cast<int>((key >> shift(var_index)) & 0x7);
  }
  static int total_degree(std::uint64_t key) { return static_cast<int>(key >> 57); }

private:
  static int shift(int var_index) { return 3 * (max_vars - 1 - var_index); }
  std::vector<VariableId> vars_;
};

// Terms of a polynomial in packed form, coefficient kept by index into the
// original term vector.
struct PackedPoly {
  std::vector<std::uint64_t> keys;  // same order as the source polynomial
};

std::optional<PackedPoly> pack_poly(const PackedCtx& ctx, const Polynomial& p);

} // namespace kslab::detail
