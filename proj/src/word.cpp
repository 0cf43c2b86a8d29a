#include "kslab/word.hpp"

#include "kslab/error.hpp"

#include <algorithm>

namespace kslab {

BitString::BitString(std::vector<long> positions, std::vector<bool> bits)
    : positions_(std::move(positions)), bits_(std::move(bits)) {
  if (positions_.size() != bits_.size())
    fail(errc::domain, "bit string positions and bits differ in length");
  if (!std::is_sorted(positions_.begin(), positions_.end()) ||
      std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end())
    fail(errc::domain, "bit string positions must be strictly increasing");
}

BitString BitString::over(const Interval& iv, const std::vector<bool>& bits) {
  if (static_cast<long>(bits.size()) != iv.width())
    fail(errc::domain, "bit count does not match interval width");
  std::vector<long> pos;
  for (long t = iv.lo; t <= iv.hi; ++t) pos.push_back(t);
  return BitString(std::move(pos), bits);
}

BitString BitString::over(const Interval& iv, unsigned long long value) {
  long width = iv.width();
  if (width > 62) fail(errc::cap, "interval too wide for an integer index");
  if (width < 62 && value >= (1ull << width))
    fail(errc::domain, "index value out of range for interval width");
  std::vector<bool> bits(width);
  for (long t = 0; t < width; ++t) bits[t] = (value >> (width - 1 - t)) & 1u;
  return over(iv, bits);
}

bool BitString::at(long position) const {
  auto it = std::lower_bound(positions_.begin(), positions_.end(), position);
  if (it == positions_.end() || *it != position)
    fail(errc::domain, "position outside bit string domain");
  return bits_[static_cast<std::size_t>(it - positions_.begin())];
}

BitString BitString::restrict_to(const std::vector<long>& positions) const {
  std::vector<bool> bits;
  bits.reserve(positions.size());
  for (long p : positions) bits.push_back(at(p));
  return BitString(positions, std::move(bits));
}

BitString BitString::restrict_to(const Interval& iv) const {
  std::vector<long> pos;
  for (long t = iv.lo; t <= iv.hi; ++t) pos.push_back(t);
  return restrict_to(pos);
}

BitString BitString::merged_with(const BitString& o) const {
  std::vector<long> pos;
  std::vector<bool> bits;
  std::size_t i = 0, j = 0;
  while (i < size() || j < o.size()) {
    bool take_left;
    if (i == size())
      take_left = false;
    else if (j == o.size())
      take_left = true;
    else if (positions_[i] == o.positions_[j])
      fail(errc::domain, "bit string domains overlap");
    else
      take_left = positions_[i] < o.positions_[j];
    if (take_left) {
      pos.push_back(positions_[i]);
      bits.push_back(bits_[i]);
      ++i;
    } else {
      pos.push_back(o.positions_[j]);
      bits.push_back(o.bits_[j]);
      ++j;
    }
  }
  return BitString(std::move(pos), std::move(bits));
}

std::string BitString::str() const {
  std::string out;
  for (bool b : bits_) out += b ? '1' : '0';
  return out;
}

Word::Word(std::vector<int> entries) : entries_(std::move(entries)) {}

int Word::entry(int i) const {
  if (i < 1 || i > d()) fail(errc::domain, "word position out of range");
  return entries_[static_cast<std::size_t>(i - 1)];
}

std::vector<int> Word::positive_positions() const {
  std::vector<int> out;
  for (int i = 1; i <= d(); ++i)
    if (entry(i) >= 0) out.push_back(i);
  return out;
}

std::vector<int> Word::negative_positions() const {
  std::vector<int> out;
  for (int i = 1; i <= d(); ++i)
    if (entry(i) < 0) out.push_back(i);
  return out;
}

long Word::positive_total() const {
  long s = 0;
  for (int e : entries_)
    if (e >= 0) s += e;
  return s;
}

long Word::negative_total() const {
  long s = 0;
  for (int e : entries_)
    if (e < 0) s += -static_cast<long>(e);
  return s;
}

long Word::positive_var_count() const {
  long s = 0;
  for (int e : entries_)
    if (e >= 0) {
      if (e > 40) fail(errc::cap, "word entry too large");
      s += 1l << e;
    }
  return s;
}

long Word::negative_var_count() const {
  long s = 0;
  for (int e : entries_)
    if (e < 0) {
      if (e < -40) fail(errc::cap, "word entry too large");
      s += 1l << -e;
    }
  return s;
}

IndexIntervals Word::intervals() const {
  IndexIntervals out;
  out.A.resize(static_cast<std::size_t>(d()));
  out.B.resize(static_cast<std::size_t>(d()));
  long apos = 0, bpos = 0;
  for (int i = 0; i < d(); ++i) {
    int e = entries_[static_cast<std::size_t>(i)];
    if (e >= 0) {
      out.A[static_cast<std::size_t>(i)] = {apos + 1, apos + e};
      apos += e;
    } else {
      out.B[static_cast<std::size_t>(i)] = {bpos + 1, bpos - e};
      bpos += -e;
    }
  }
  return out;
}

std::string Word::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i]);
  }
  return out + ")";
}

BalanceResult is_balanced(const Word& w) {
  auto iv = w.intervals();
  for (int i = 1; i <= w.d(); ++i) {
    if (w.entry(i) >= 0) {
      const Interval& a = iv.A[static_cast<std::size_t>(i - 1)];
      bool covered = false;
      for (int j = 1; j <= w.d() && !covered; ++j)
        if (w.entry(j) < 0) covered = a.intersects(iv.B[static_cast<std::size_t>(j - 1)]);
      if (!covered) return {false, BalanceWitness{true, i}};
    } else {
      const Interval& b = iv.B[static_cast<std::size_t>(i - 1)];
      bool covered = false;
      for (int j = 1; j <= w.d() && !covered; ++j)
        if (w.entry(j) >= 0) covered = b.intersects(iv.A[static_cast<std::size_t>(j - 1)]);
      if (!covered) return {false, BalanceWitness{false, i}};
    }
  }
  return {true, std::nullopt};
}

VariableId block_variable(const Word& w, int i, const BitString& sigma) {
  int e = w.entry(i);
  auto iv = w.intervals();
  const Interval& blk = (e >= 0) ? iv.A[static_cast<std::size_t>(i - 1)]
                                 : iv.B[static_cast<std::size_t>(i - 1)];
  std::vector<long> expect;
  for (long t = blk.lo; t <= blk.hi; ++t) expect.push_back(t);
  if (sigma.positions() != expect)
    fail(errc::domain, "index string does not cover the block interval");
  if (sigma.size() == 0) return (e >= 0) ? VariableId::x(i) : VariableId::y(i);
  return (e >= 0) ? VariableId::x(i, sigma.bits()) : VariableId::y(i, sigma.bits());
}

std::vector<VariableId> block_variables(const Word& w, int i) {
  int width = std::abs(w.entry(i));
  if (width > 40) fail(errc::cap, "word entry too large");
  auto iv = w.intervals();
  const Interval& blk = (w.entry(i) >= 0) ? iv.A[static_cast<std::size_t>(i - 1)]
                                          : iv.B[static_cast<std::size_t>(i - 1)];
  std::vector<VariableId> out;
  for (unsigned long long v = 0; v < (1ull << width); ++v)
    out.push_back(block_variable(w, i, BitString::over(blk, v)));
  return out;
}

namespace {

// Decodes one set-multilinear factor: which block, and its index string.
struct SmlFactor {
  int block;
  BitString sigma;
};

std::optional<SmlFactor> decode_factor(const VariableId& v, const Word& w, Side side) {
  VarRole want = (side == Side::positive) ? VarRole::X : VarRole::Y;
  if (v.role != want) return std::nullopt;
  int i = v.block;
  if (i < 1 || i > w.d()) return std::nullopt;
  int e = w.entry(i);
  if (side == Side::positive && e < 0) return std::nullopt;
  if (side == Side::negative && e >= 0) return std::nullopt;
  if (v.aux_len != std::abs(e)) return std::nullopt;
  auto iv = w.intervals();
  const Interval& blk = (side == Side::positive) ? iv.A[static_cast<std::size_t>(i - 1)]
                                                 : iv.B[static_cast<std::size_t>(i - 1)];
  return SmlFactor{i, BitString::over(blk, v.bits())};
}

} // namespace

std::optional<std::set<int>> sml_support(const Monomial& m, const Word& w, Side side) {
  std::set<int> blocks;
  for (const auto& f : m.factors()) {
    if (f.exp != 1) return std::nullopt;
    auto dec = decode_factor(f.var, w, side);
    if (!dec) return std::nullopt;
    if (!blocks.insert(dec->block).second) return std::nullopt;
  }
  return blocks;
}

bool is_set_multilinear(const Monomial& m, const Word& w, Side side) {
  return sml_support(m, w, side).has_value();
}

bool is_set_multilinear(const Polynomial& p, const Word& w, Side side) {
  std::set<int> full;
  for (int i : (side == Side::positive) ? w.positive_positions() : w.negative_positions())
    full.insert(i);
  for (const auto& t : p.terms()) {
    auto s = sml_support(t.mono, w, side);
    if (!s || *s != full) return false;
  }
  return true;
}

BitString string_of_monomial(const Monomial& m, const Word& w, Side side) {
  BitString out;
  for (const auto& f : m.factors()) {
    if (f.exp != 1) fail(errc::domain, "monomial is not set-multilinear");
    auto dec = decode_factor(f.var, w, side);
    if (!dec) fail(errc::domain, "monomial is not set-multilinear over this word");
    out = out.merged_with(dec->sigma);
  }
  return out;
}

Monomial monomial_of_string(const BitString& sigma, const Word& w, Side side) {
  auto iv = w.intervals();
  std::vector<VarExp> factors;
  std::vector<bool> used(sigma.size(), false);
  for (int i = 1; i <= w.d(); ++i) {
    bool on_side = (side == Side::positive) ? (w.entry(i) >= 0) : (w.entry(i) < 0);
    if (!on_side) continue;
    const Interval& blk = (side == Side::positive) ? iv.A[static_cast<std::size_t>(i - 1)]
                                                   : iv.B[static_cast<std::size_t>(i - 1)];
    if (blk.empty()) continue;
    // The block is either fully inside the domain or fully outside.
    std::size_t inside = 0;
    for (std::size_t t = 0; t < sigma.positions().size(); ++t)
      if (blk.contains(sigma.positions()[t])) {
        ++inside;
        used[t] = true;
      }
    if (inside == 0) continue;
    if (inside != static_cast<std::size_t>(blk.width()))
      fail(errc::domain, "string domain covers a block only partially");
    factors.push_back({block_variable(w, i, sigma.restrict_to(blk)), 1});
  }
  if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
    fail(errc::domain, "string domain has positions outside every block");
  return Monomial::from_factors(std::move(factors));
}

std::vector<Monomial> sml_monomials(const Word& w, Side side, const std::set<int>& S) {
  auto iv = w.intervals();
  std::vector<std::pair<int, Interval>> blocks;
  long total_width = 0;
  for (int i : S) {
    bool on_side = (side == Side::positive) ? (w.entry(i) >= 0) : (w.entry(i) < 0);
    if (!on_side) fail(errc::domain, "support position is on the wrong side of the word");
    const Interval& blk = (side == Side::positive) ? iv.A[static_cast<std::size_t>(i - 1)]
                                                   : iv.B[static_cast<std::size_t>(i - 1)];
    blocks.push_back({i, blk});
    total_width += blk.width();
  }
  if (total_width > 24) fail(errc::cap, "too many set-multilinear monomials to enumerate");
  std::vector<Monomial> out;
  out.reserve(1ull << total_width);
  for (unsigned long long v = 0; v < (1ull << total_width); ++v) {
    std::vector<VarExp> factors;
    long used = 0;
    for (const auto& [i, blk] : blocks) {
      long width = blk.width();
      unsigned long long part = (v >> (total_width - used - width)) & ((width < 62) ? ((1ull << width) - 1) : ~0ull);
      factors.push_back({block_variable(w, i, BitString::over(blk, part)), 1});
      used += width;
    }
    out.push_back(Monomial::from_factors(std::move(factors)));
  }
  return out;
}

Word gen_balanced_word(int d, int k) {
  if (d < 0) fail(errc::domain, "word length must be nonnegative");
  if (k < 1) fail(errc::domain, "k must be positive");
  if (d == 0) return Word(std::vector<int>{});
  // floor(k / sqrt 2): the largest t with 2 t^2 <= k^2, found exactly.
  Int kk = Int(k) * k / 2;
  Int t;
  mpz_sqrt(t.get_mpz_t(), kk.get_mpz_t());
  long a = t.get_si();
  if (a == 0) fail(errc::infeasible, "no balanced word for d=" + std::to_string(d) +
                                         ", k=" + std::to_string(k) + ": floor(k/sqrt 2) is 0");
  std::vector<int> entries(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) entries[static_cast<std::size_t>(i)] = (i % 2 == 0) ? static_cast<int>(a) : -k;
  Word w(entries);
  if (is_balanced(w).balanced) return w;
  entries[static_cast<std::size_t>(d - 1)] =
      (entries[static_cast<std::size_t>(d - 1)] > 0) ? -k : static_cast<int>(a);
  Word flipped(entries);
  if (is_balanced(flipped).balanced) return flipped;
  fail(errc::infeasible, "no balanced word for d=" + std::to_string(d) + ", k=" + std::to_string(k) +
                             " under the alternating scheme");
}

} // namespace kslab
