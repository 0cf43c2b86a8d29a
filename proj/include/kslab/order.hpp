#pragma once

#include "kslab/monomial.hpp"

namespace kslab {

enum class MonomialOrder { grlex, lex };

// Both orders scan variables in increasing variable-id order; at the first
// variable whose exponents differ, the larger exponent wins.  grlex compares
// total degree first and breaks ties with that scan.  Both are total,
// multiplicative (a < b implies ac < bc) and extend strict divisibility.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

inline bool less(const Monomial& a, const Monomial& b, MonomialOrder order) {
  return compare(a, b, order) < 0;
}

MonomialOrder order_from_string(const std::string& s);
std::string order_to_string(MonomialOrder order);

} // namespace kslab
