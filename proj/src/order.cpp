#include "kslab/order.hpp"

#include "kslab/error.hpp"

namespace kslab {

namespace {

// Scans the union of supports in increasing variable order; the first
// variable with differing exponents decides, larger exponent first.
int lex_scan(const Monomial& a, const Monomial& b) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].var < fb[j].var) return 1;   // a has a positive exponent where b has 0
    if (fb[j].var < fa[i].var) return -1;
    if (fa[i].exp != fb[j].exp) return fa[i].exp > fb[j].exp ? 1 : -1;
    ++i, ++j;
  }
  if (i < fa.size()) return 1;
  if (j < fb.size()) return -1;
  return 0;
}

} // namespace

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (order == MonomialOrder::grlex && a.degree() != b.degree())
    return a.degree() > b.degree() ? 1 : -1;
  return lex_scan(a, b);
}

MonomialOrder order_from_string(const std::string& s) {
  if (s == "grlex") return MonomialOrder::grlex;
  if (s == "lex") return MonomialOrder::lex;
  fail(errc::io, "unknown monomial order: '" + s + "'");
}

std::string order_to_string(MonomialOrder order) {
  return order == MonomialOrder::grlex ? "grlex" : "lex";
}

} // namespace kslab
