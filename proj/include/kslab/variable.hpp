#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace kslab {

// Variable roles, in the order used to compare variables:
//   X  "x.<i>" or "x.<i>.<bits>"          main variables, optionally indexed
//                                         by a 0/1 string
//   Y  "y.<j>" or "y.<j>.<bits>"          lift variables; the plain form is
//                                         the j-th axiom placeholder in proofs
//   Z  "z.<k>" or "z.<a>.<b>.<c>.<d>"     Boolean-axiom placeholder (1 index)
//                                         or generic coefficient (4 indices)
//   V  "v.<k>"                            plain auxiliary variables
enum class VarRole : std::uint8_t { X = 0, Y = 1, Z = 2, V = 3 };

// A variable identity.  `block` is the first numeric index.  For X/Y,
// `aux_len` is the number of bits in the 0/1 suffix (0 for the plain form)
// and `aux` holds those bits as an integer, first bit most significant.
// For Z, `aux_len` is the tuple length (1 or 4) and `aux` packs the last
// three indices as three 16-bit fields.  For V both are 0.
struct VariableId {
  VarRole role = VarRole::X;
  std::int32_t block = 0;
  std::uint8_t aux_len = 0;
  std::uint64_t aux = 0;

  auto operator<=>(const VariableId&) const = default;

  std::string name() const;
  static VariableId parse(const std::string& name);

  static VariableId x(int i) { return {VarRole::X, i, 0, 0}; }
  static VariableId x(int i, const std::vector<bool>& bits) { return with_bits(VarRole::X, i, bits); }
  static VariableId y(int j) { return {VarRole::Y, j, 0, 0}; }
  static VariableId y(int j, const std::vector<bool>& bits) { return with_bits(VarRole::Y, j, bits); }
  static VariableId z(int k) { return {VarRole::Z, k, 1, 0}; }
  static VariableId z(int a, int b, int c, int d);
  static VariableId v(int k) { return {VarRole::V, k, 0, 0}; }

  std::vector<bool> bits() const;

private:
  static VariableId with_bits(VarRole role, int block, const std::vector<bool>& bits);
};

} // namespace kslab
