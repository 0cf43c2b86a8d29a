#include "kslab/variable.hpp"

#include "kslab/error.hpp"

#include <cstdlib>

namespace kslab {

namespace {

constexpr std::uint8_t kMaxBits = 63;

std::vector<std::string> split_dots(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto dot = s.find('.', start);
    if (dot == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, dot - start));
    start = dot + 1;
  }
}

bool parse_index(const std::string& tok, long& out) {
  if (tok.empty() || tok.size() > 9) return false;
  for (char c : tok)
    if (c < '0' || c > '9') return false;
  out = std::strtol(tok.c_str(), nullptr, 10);
  return true;
}

bool is_bit_token(const std::string& tok) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (c != '0' && c != '1') return false;
  return true;
}

} // namespace

VariableId VariableId::with_bits(VarRole role, int block, const std::vector<bool>& bits) {
  if (bits.empty()) fail(errc::domain, "indexed variable needs at least one bit");
  if (bits.size() > kMaxBits) fail(errc::cap, "bit index longer than 63");
  std::uint64_t aux = 0;
  for (bool b : bits) aux = (aux << 1) | (b ? 1u : 0u);
  return {role, block, static_cast<std::uint8_t>(bits.size()), aux};
}

VariableId VariableId::z(int a, int b, int c, int d) {
  auto ok = [](int t) { return t >= 0 && t < (1 << 16); };
  if (!ok(a) || !ok(b) || !ok(c) || !ok(d)) fail(errc::cap, "z tuple index out of range");
  std::uint64_t aux = (static_cast<std::uint64_t>(b) << 32) |
                      (static_cast<std::uint64_t>(c) << 16) | static_cast<std::uint64_t>(d);
  return {VarRole::Z, a, 4, aux};
}

std::vector<bool> VariableId::bits() const {
  std::vector<bool> out(aux_len);
  for (std::uint8_t t = 0; t < aux_len; ++t)
    out[t] = (aux >> (aux_len - 1 - t)) & 1u;
  return out;
}

std::string VariableId::name() const {
  std::string out;
  switch (role) {
    case VarRole::X: out = "x"; break;
    case VarRole::Y: out = "y"; break;
    case VarRole::Z: out = "z"; break;
    case VarRole::V: out = "v"; break;
  }
  out += "." + std::to_string(block);
  if (role == VarRole::Z) {
    if (aux_len == 4) {
      out += "." + std::to_string((aux >> 32) & 0xffff);
      out += "." + std::to_string((aux >> 16) & 0xffff);
      out += "." + std::to_string(aux & 0xffff);
    }
  } else if (aux_len > 0) {
    out += ".";
    for (bool b : bits()) out += b ? '1' : '0';
  }
  return out;
}

VariableId VariableId::parse(const std::string& name) {
  auto toks = split_dots(name);
  if (toks.size() < 2) fail(errc::io, "malformed variable name: '" + name + "'");
  const std::string& head = toks[0];
  long block = 0;
  if (!parse_index(toks[1], block)) fail(errc::io, "malformed variable index in '" + name + "'");

  if (head == "v") {
    if (toks.size() != 2) fail(errc::io, "malformed variable name: '" + name + "'");
    return v(static_cast<int>(block));
  }
  if (head == "z") {
    if (toks.size() == 2) return z(static_cast<int>(block));
    if (toks.size() == 5) {
      long b, c, d;
      if (!parse_index(toks[2], b) || !parse_index(toks[3], c) || !parse_index(toks[4], d))
        fail(errc::io, "malformed variable index in '" + name + "'");
      return z(static_cast<int>(block), static_cast<int>(b), static_cast<int>(c),
               static_cast<int>(d));
    }
    fail(errc::io, "malformed variable name: '" + name + "'");
  }
  if (head == "x" || head == "y") {
    VarRole role = (head == "x") ? VarRole::X : VarRole::Y;
    if (toks.size() == 2) return {role, static_cast<int>(block), 0, 0};
    if (toks.size() == 3 && is_bit_token(toks[2])) {
      std::vector<bool> bits;
      for (char c : toks[2]) bits.push_back(c == '1');
      return with_bits(role, static_cast<int>(block), bits);
    }
    fail(errc::io, "malformed variable name: '" + name + "'");
  }
  fail(errc::io, "unknown variable role in '" + name + "'");
}

} // namespace kslab
