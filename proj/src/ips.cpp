// Proof checking and construction.
//
// A proof is an arbitrary circuit over ordinary variables plus two kinds of
// placeholder leaves: y.j stands for the j-th axiom and z.k for the Boolean
// axiom v^2 - v of the k-th listed variable.  The verifier establishes two
// polynomial identities — the proof vanishes when every placeholder is
// zeroed, and substituting the axioms yields the target — plus the declared
// linearity class of the computed polynomial.
//
// Most proofs we meet (in particular everything build_refutation emits) are
// a single top sum of arguments of the form  constant * monomial * at most
// one placeholder.  For that shape all three checks run on a flattened
// "stream" of packed monomial keys without ever materializing the expanded
// polynomial: condition 2 becomes one sort of (argument, axiom-term) key
// pairs followed by an exact group-sum per distinct monomial.  A cheap
// screen evaluates both sides at seeded points modulo the Mersenne prime
// 2^61 - 1 first; because reduction modulo p is a ring homomorphism (once
// no denominator vanishes mod p), differing residues prove the identity
// false, so a screen hit is an exact FAIL and only a PASS needs the full
// sweep.  Circuits of any other shape go through Polynomial expansion, with
// Schwartz-Zippel sampling as the documented fallback beyond the cap.

#include "kslab/ips.hpp"

#include "kslab/boolean_inverse.hpp"
#include "kslab/error.hpp"
#include "kslab/multilinear.hpp"
#include "packed.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kslab {

IpsClass ips_class_from_string(const std::string& s) {
  if (s == "general") return IpsClass::general;
  if (s == "linear") return IpsClass::linear;
  if (s == "lips") return IpsClass::lips;
  if (s == "mlips") return IpsClass::mlips;
  fail(errc::domain, "unknown proof class '" + s + "' (expected general, linear, lips or mlips)");
}

std::string ips_class_to_string(IpsClass c) {
  switch (c) {
    case IpsClass::general: return "general";
    case IpsClass::linear: return "linear";
    case IpsClass::lips: return "lips";
    case IpsClass::mlips: return "mlips";
  }
  fail(errc::domain, "corrupt proof class value");
}

std::string ips_condition_to_string(IpsCondition c) {
  switch (c) {
    case IpsCondition::zero_at_origin: return "zero-at-origin";
    case IpsCondition::certifies_target: return "certifies-target";
    case IpsCondition::declared_class: return "declared-class";
  }
  fail(errc::domain, "corrupt proof condition value");
}

namespace {

using detail::PackedCtx;

// ---------------------------------------------------------------------------
// placeholders

struct Placeholder {
  enum Kind : std::uint8_t { none, axiom, boolean } kind = none;
  std::size_t index = 0;  // 0-based into axioms / bool_vars
};

bool placeholder_shaped(const VariableId& v) {
  return (v.role == VarRole::Y && v.aux_len == 0) || (v.role == VarRole::Z && v.aux_len == 1);
}

Placeholder classify(const VariableId& v, const IpsStatement& stmt) {
  if (v.role == VarRole::Y && v.aux_len == 0) {
    if (v.block < 1 || static_cast<std::size_t>(v.block) > stmt.axioms.size())
      fail(errc::domain, "axiom placeholder " + v.name() + " is out of range; the statement has " +
                             std::to_string(stmt.axioms.size()) + " axiom(s)");
    return {Placeholder::axiom, static_cast<std::size_t>(v.block) - 1};
  }
  if (v.role == VarRole::Z && v.aux_len == 1) {
    if (v.block < 1 || static_cast<std::size_t>(v.block) > stmt.bool_vars.size())
      fail(errc::domain, "Boolean placeholder " + v.name() +
                             " is out of range; the statement lists " +
                             std::to_string(stmt.bool_vars.size()) + " Boolean variable(s)");
    return {Placeholder::boolean, static_cast<std::size_t>(v.block) - 1};
  }
  return {};
}

Polynomial bool_axiom(const VariableId& v) {
  return Polynomial::var(v, 2) - Polynomial::var(v);
}

void validate_statement(const IpsStatement& stmt) {
  for (const Polynomial& f : stmt.axioms)
    for (const VariableId& v : f.support())
      if (placeholder_shaped(v))
        fail(errc::domain, "axioms may not mention the placeholder variable " + v.name());
  for (const VariableId& v : stmt.target.support())
    if (placeholder_shaped(v))
      fail(errc::domain, "the target may not mention the placeholder variable " + v.name());
  std::set<VariableId> seen;
  for (const VariableId& v : stmt.bool_vars) {
    if (placeholder_shaped(v))
      fail(errc::domain, "the Boolean variable list may not contain the placeholder " + v.name());
    if (!seen.insert(v).second)
      fail(errc::domain, "duplicate Boolean variable " + v.name());
  }
}

// Every variable the substituted proof can mention: ordinary circuit leaves
// plus whatever the axioms, Boolean axioms and target introduce.
std::vector<VariableId> ordinary_vars(const Circuit& c, const IpsStatement& stmt) {
  std::set<VariableId> vs;
  for (const VariableId& v : c.variables())
    if (classify(v, stmt).kind == Placeholder::none) vs.insert(v);
  for (const Polynomial& f : stmt.axioms)
    for (const VariableId& v : f.support()) vs.insert(v);
  for (const VariableId& v : stmt.bool_vars) vs.insert(v);
  for (const VariableId& v : stmt.target.support()) vs.insert(v);
  return {vs.begin(), vs.end()};
}

// ---------------------------------------------------------------------------
// arithmetic modulo the Mersenne prime 2^61 - 1

constexpr std::uint64_t kP = (std::uint64_t(1) << 61) - 1;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r =
      static_cast<std::uint64_t>(t & kP) + static_cast<std::uint64_t>(t >> 61);
  if (r >= kP) r -= kP;
  if (r >= kP) r -= kP;
  return r;
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kP ? r - kP : r;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mod_mul(r, b);
    b = mod_mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Residues num * den^-1 mod p for a batch of rationals, with a single
// modular inversion (Montgomery's trick).  Returns false when some
// denominator is divisible by p, which makes the screen inapplicable.
class ResidueBatch {
public:
  void add(const Rat& q) {
    nums_.push_back(mpz_fdiv_ui(mpq_numref(q.get_mpq_t()), kP));
    dens_.push_back(mpz_fdiv_ui(mpq_denref(q.get_mpq_t()), kP));
  }

  bool finish(std::vector<std::uint64_t>& out) {
    const std::size_t n = dens_.size();
    out.resize(n);
    std::vector<std::uint64_t> prefix(n);
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (dens_[i] == 0) return false;
      acc = mod_mul(acc, dens_[i]);
      prefix[i] = acc;
    }
    std::uint64_t inv = mod_pow(acc, kP - 2);
    for (std::size_t i = n; i-- > 0;) {
      std::uint64_t inv_den = i == 0 ? inv : mod_mul(inv, prefix[i - 1]);
      out[i] = mod_mul(nums_[i], inv_den);
      inv = mod_mul(inv, dens_[i]);
    }
    return true;
  }

private:
  std::vector<std::uint64_t> nums_, dens_;
};

// ---------------------------------------------------------------------------
// the flattened stream form

struct StreamArg {
  std::uint64_t base = 0;   // packed key of the ordinary-variable part
  std::uint32_t image = 0;  // 0 none, 1..m axioms, m+1.. Boolean axioms
  Rat coeff;
};

struct PackedImage {
  std::vector<std::uint64_t> keys;
  std::vector<Rat> coeffs;
};

struct StreamForm {
  PackedCtx ctx;
  std::vector<StreamArg> args;
  std::vector<PackedImage> images;  // images[0] is the constant 1
  std::vector<std::uint64_t> target_keys;  // descending, parallel to coeffs
  std::vector<Rat> target_coeffs;
  std::size_t pair_count = 0;  // total coefficient contributions of condition 2
};

int var_index(const PackedCtx& ctx, const VariableId& v) {
  const auto& vs = ctx.vars();
  return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
}

std::optional<StreamForm> make_stream_form(const Circuit& c, const IpsStatement& stmt) {
  auto ctx = PackedCtx::over(ordinary_vars(c, stmt));
  if (!ctx) return std::nullopt;
  const int nv = static_cast<int>(ctx->vars().size());

  StreamForm sf{std::move(*ctx), {}, {}, {}, {}, 0};
  auto pack_image = [&](const Polynomial& p) -> bool {
    PackedImage img;
    img.keys.reserve(p.size());
    img.coeffs.reserve(p.size());
    for (const Term& t : p.terms()) {
      auto k = sf.ctx.pack(t.mono);
      if (!k) return false;
      img.keys.push_back(*k);
      img.coeffs.push_back(t.coeff);
    }
    sf.images.push_back(std::move(img));
    return true;
  };
  sf.images.push_back(PackedImage{{0}, {Rat(1)}});
  for (const Polynomial& f : stmt.axioms)
    if (!pack_image(f)) return std::nullopt;
  for (const VariableId& v : stmt.bool_vars)
    if (!pack_image(bool_axiom(v))) return std::nullopt;
  for (const Term& t : stmt.target.terms()) {
    auto k = sf.ctx.pack(t.mono);
    if (!k) return std::nullopt;
    sf.target_keys.push_back(*k);  // grlex order of the terms makes these descending
    sf.target_coeffs.push_back(t.coeff);
  }

  // walk the arguments of the top sum; any other output shape is a
  // one-argument sum
  const NodeId out = c.output();
  const bool top_sum = c.op(out) == Circuit::Op::sum;
  const std::size_t fan = top_sum ? c.fanin(out) : 1;

  std::array<int, PackedCtx::max_vars> arg_max{};
  int arg_deg_max = 0;
  sf.args.reserve(fan);
  for (std::size_t a = 0; a < fan; ++a) {
    const NodeId node = top_sum ? c.child(out, a) : out;
    Rat coeff = top_sum ? c.sum_coeff(out, a) : Rat(1);
    if (coeff == 0) continue;
    std::array<int, PackedCtx::max_vars> exps{};
    std::uint32_t image = 0;
    bool flat = true;
    auto leaf = [&](NodeId id) {
      switch (c.op(id)) {
        case Circuit::Op::var: {
          Placeholder ph = classify(c.var_of(id), stmt);
          if (ph.kind == Placeholder::none) {
            ++exps[var_index(sf.ctx, c.var_of(id))];
          } else if (image != 0) {
            flat = false;  // two placeholders in one argument
          } else {
            image = ph.kind == Placeholder::axiom
                        ? 1 + static_cast<std::uint32_t>(ph.index)
                        : 1 + static_cast<std::uint32_t>(stmt.axioms.size() + ph.index);
          }
          break;
        }
        case Circuit::Op::constant:
          coeff *= c.const_of(id);
          break;
        default:
          flat = false;
      }
    };
    if (c.op(node) == Circuit::Op::prod) {
      for (std::size_t k = 0; k < c.fanin(node) && flat; ++k) leaf(c.child(node, k));
    } else {
      leaf(node);
    }
    if (!flat) return std::nullopt;
    if (coeff == 0) continue;  // a zero constant leaf annihilated the argument
    int deg = 0;
    for (int i = 0; i < nv; ++i) {
      if (exps[i] > 7) return std::nullopt;
      deg += exps[i];
    }
    if (deg > 127) return std::nullopt;
    arg_deg_max = std::max(arg_deg_max, deg);
    std::uint64_t base = 0;
    for (int i = 0; i < nv; ++i) {
      if (exps[i] > arg_max[i]) arg_max[i] = exps[i];
      if (exps[i]) base += sf.ctx.make_key(i, exps[i]);
    }
    sf.args.push_back(StreamArg{base, image, std::move(coeff)});
    sf.pair_count += sf.images[image].keys.size();
  }

  // pair keys are built by adding an argument key and an image key, which
  // needs headroom in every exponent field and in the degree field
  std::array<int, PackedCtx::max_vars> img_max{};
  int img_deg_max = 0;
  for (const PackedImage& img : sf.images)
    for (std::uint64_t k : img.keys) {
      img_deg_max = std::max(img_deg_max, PackedCtx::total_degree(k));
      for (int i = 0; i < nv; ++i) img_max[i] = std::max(img_max[i], sf.ctx.exp_at(k, i));
    }
  for (int i = 0; i < nv; ++i)
    if (arg_max[i] + img_max[i] > 7) return std::nullopt;
  if (arg_deg_max + img_deg_max > 127) return std::nullopt;
  return sf;
}

// ---------------------------------------------------------------------------
// checks on the stream form

IpsVerdict fail_verdict(IpsCondition cond, std::string detail) {
  IpsVerdict v;
  v.pass = false;
  v.violated = cond;
  v.detail = std::move(detail);
  return v;
}

// Sorts (key, index) pairs descending and folds exact coefficient sums per
// distinct key, invoking sink(key, coeff) for each nonzero group.
template <class Coeff, class Sink>
void group_by_key(std::vector<std::pair<std::uint64_t, std::uint32_t>>& entries,
                  Coeff&& coeff_of, Sink&& sink) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::size_t i = 0;
  Rat acc;
  while (i < entries.size()) {
    std::size_t j = i;
    acc = 0;
    for (; j < entries.size() && entries[j].first == entries[i].first; ++j)
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), coeff_of(entries[j].second).get_mpq_t());
    if (acc != 0) sink(entries[i].first, acc);
    i = j;
  }
}

// Condition 1 on the stream: arguments without a placeholder survive the
// all-zero substitution and must cancel exactly.
std::optional<IpsVerdict> stream_zero_origin(const StreamForm& sf) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keep;
  for (std::uint32_t a = 0; a < sf.args.size(); ++a)
    if (sf.args[a].image == 0) keep.push_back({sf.args[a].base, a});
  std::optional<IpsVerdict> bad;
  group_by_key(
      keep, [&](std::uint32_t a) -> const Rat& { return sf.args[a].coeff; },
      [&](std::uint64_t key, const Rat& c) {
        if (!bad)
          bad = fail_verdict(IpsCondition::zero_at_origin,
                             "zeroing every placeholder leaves the monomial " +
                                 sf.ctx.unpack(key).str() + " with coefficient " +
                                 rat_to_string(c));
      });
  return bad;
}

struct ScreenData {
  bool usable = false;
  std::vector<std::uint64_t> arg_res;
  std::vector<std::vector<std::uint64_t>> img_res;
  std::vector<std::uint64_t> tgt_res;
};

ScreenData screen_residues(const StreamForm& sf) {
  ScreenData sd;
  ResidueBatch batch;
  for (const StreamArg& a : sf.args) batch.add(a.coeff);
  for (const PackedImage& img : sf.images)
    for (const Rat& c : img.coeffs) batch.add(c);
  for (const Rat& c : sf.target_coeffs) batch.add(c);
  std::vector<std::uint64_t> flat;
  if (!batch.finish(flat)) return sd;
  std::size_t pos = 0;
  sd.arg_res.assign(flat.begin(), flat.begin() + sf.args.size());
  pos += sf.args.size();
  for (const PackedImage& img : sf.images) {
    sd.img_res.push_back({flat.begin() + pos, flat.begin() + pos + img.coeffs.size()});
    pos += img.coeffs.size();
  }
  sd.tgt_res.assign(flat.begin() + pos, flat.end());
  sd.usable = true;
  return sd;
}

struct PointEval {
  std::uint64_t proof = 0;
  std::uint64_t target = 0;
};

PointEval screen_eval(const StreamForm& sf, const ScreenData& sd, std::uint64_t seed,
                      std::size_t trial) {
  const int nv = static_cast<int>(sf.ctx.vars().size());
  std::uint64_t state =
      (seed ^ 0x8883a96d17f234afULL) + 0x9e3779b97f4a7c15ULL * (trial + 1);
  // value powers per variable; exponent fields never exceed 7
  std::vector<std::array<std::uint64_t, 8>> pw(nv);
  for (int i = 0; i < nv; ++i) {
    std::uint64_t v = splitmix64(state) % kP;
    pw[i][0] = 1;
    for (int e = 1; e < 8; ++e) pw[i][e] = mod_mul(pw[i][e - 1], v);
  }
  auto key_val = [&](std::uint64_t key) {
    std::uint64_t r = 1;
    for (int i = 0; i < nv; ++i) {
      int e = sf.ctx.exp_at(key, i);
      if (e) r = mod_mul(r, pw[i][e]);
    }
    return r;
  };
  std::vector<std::uint64_t> img_val(sf.images.size(), 0);
  for (std::size_t id = 0; id < sf.images.size(); ++id)
    for (std::size_t t = 0; t < sf.images[id].keys.size(); ++t)
      img_val[id] =
          mod_add(img_val[id], mod_mul(sd.img_res[id][t], key_val(sf.images[id].keys[t])));
  PointEval pe;
  for (std::size_t a = 0; a < sf.args.size(); ++a)
    pe.proof = mod_add(
        pe.proof,
        mod_mul(sd.arg_res[a], mod_mul(key_val(sf.args[a].base), img_val[sf.args[a].image])));
  for (std::size_t t = 0; t < sf.target_keys.size(); ++t)
    pe.target = mod_add(pe.target, mod_mul(sd.tgt_res[t], key_val(sf.target_keys[t])));
  return pe;
}

// Condition 2 in full: every coefficient of the expansion against the
// target.  Returns the first mismatch in descending monomial order.
std::optional<IpsVerdict> sweep_mismatch(const StreamForm& sf) {
  struct KeyPair {
    std::uint64_t key;
    std::uint32_t arg;
    std::uint32_t term;
  };
  std::vector<KeyPair> pairs;
  pairs.reserve(sf.pair_count);
  for (std::uint32_t a = 0; a < sf.args.size(); ++a) {
    const auto& keys = sf.images[sf.args[a].image].keys;
    for (std::uint32_t t = 0; t < keys.size(); ++t)
      pairs.push_back({sf.args[a].base + keys[t], a, t});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const KeyPair& x, const KeyPair& y) { return x.key > y.key; });

  auto mismatch = [&](std::uint64_t key, const Rat& got, const Rat& want) {
    return fail_verdict(IpsCondition::certifies_target,
                        "coefficient of " + sf.ctx.unpack(key).str() +
                            ": the expansion gives " + rat_to_string(got) +
                            ", the target needs " + rat_to_string(want));
  };
  std::size_t tp = 0;
  std::size_t i = 0;
  Rat acc, prod;
  while (i < pairs.size()) {
    const std::uint64_t key = pairs[i].key;
    std::size_t j = i;
    acc = 0;
    for (; j < pairs.size() && pairs[j].key == key; ++j) {
      const StreamArg& sa = sf.args[pairs[j].arg];
      mpq_mul(prod.get_mpq_t(), sa.coeff.get_mpq_t(),
              sf.images[sa.image].coeffs[pairs[j].term].get_mpq_t());
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), prod.get_mpq_t());
    }
    if (tp < sf.target_keys.size() && sf.target_keys[tp] > key)
      return mismatch(sf.target_keys[tp], Rat(0), sf.target_coeffs[tp]);
    if (tp < sf.target_keys.size() && sf.target_keys[tp] == key) {
      if (acc != sf.target_coeffs[tp]) return mismatch(key, acc, sf.target_coeffs[tp]);
      ++tp;
    } else if (acc != 0) {
      return mismatch(key, acc, Rat(0));
    }
    i = j;
  }
  if (tp < sf.target_keys.size())
    return mismatch(sf.target_keys[tp], Rat(0), sf.target_coeffs[tp]);
  return std::nullopt;
}

// All exponent fields of a packed key at once: a key is multilinear iff no
// field has its 2- or 4-bit set.
constexpr std::uint64_t ml_mask() {
  std::uint64_t m = 0;
  for (int i = 0; i < PackedCtx::max_vars; ++i) m |= std::uint64_t(0b110) << (3 * i);
  return m;
}
constexpr std::uint64_t kMlMask = ml_mask();

// Declared-class check.  One placeholder per argument, with exponent 1,
// already bounds the individual degree in every placeholder by 1, so the
// linear and axiom-linear classes hold structurally on this shape; only
// multilinearity of the Boolean-free part needs arithmetic, and only for
// monomials that are not multilinear to begin with (the usual case of none).
std::optional<IpsVerdict> stream_class_violation(const StreamForm& sf, IpsClass declared,
                                                 std::size_t axiom_count) {
  if (declared != IpsClass::mlips) return std::nullopt;
  struct Cand {
    std::uint64_t base;
    std::uint32_t image;
    std::uint32_t arg;
  };
  std::vector<Cand> cand;
  for (std::uint32_t a = 0; a < sf.args.size(); ++a) {
    const StreamArg& sa = sf.args[a];
    if (sa.image <= axiom_count && (sa.base & kMlMask) != 0)
      cand.push_back({sa.base, sa.image, a});
  }
  if (cand.empty()) return std::nullopt;
  std::sort(cand.begin(), cand.end(), [](const Cand& x, const Cand& y) {
    return x.image != y.image ? x.image < y.image : x.base > y.base;
  });
  std::size_t i = 0;
  Rat acc;
  while (i < cand.size()) {
    std::size_t j = i;
    acc = 0;
    for (; j < cand.size() && cand[j].image == cand[i].image && cand[j].base == cand[i].base; ++j)
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), sf.args[cand[j].arg].coeff.get_mpq_t());
    if (acc != 0) {
      std::string mono = sf.ctx.unpack(cand[i].base).str();
      if (cand[i].image != 0) mono += "*y." + std::to_string(cand[i].image);
      return fail_verdict(IpsCondition::declared_class,
                          "with Boolean placeholders zeroed the proof computes the "
                          "non-multilinear monomial " +
                              mono + " with coefficient " + rat_to_string(acc));
    }
    i = j;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// general-shape fallbacks via Polynomial expansion

Substitution zero_subst(const Circuit& c, const IpsStatement& stmt) {
  Substitution s;
  for (const VariableId& v : c.variables())
    if (classify(v, stmt).kind != Placeholder::none) s.emplace(v, Polynomial::zero());
  return s;
}

Substitution image_subst(const Circuit& c, const IpsStatement& stmt) {
  Substitution s;
  for (const VariableId& v : c.variables()) {
    Placeholder ph = classify(v, stmt);
    if (ph.kind == Placeholder::axiom) s.emplace(v, stmt.axioms[ph.index]);
    if (ph.kind == Placeholder::boolean) s.emplace(v, bool_axiom(stmt.bool_vars[ph.index]));
  }
  return s;
}

// Syntactic degree bound of the circuit, with caller-chosen leaf degrees.
template <class LeafDeg>
Int syntactic_degree(const Circuit& c, LeafDeg&& leaf_deg) {
  const std::size_t n = c.measures().size;
  std::vector<Int> d(n, Int(0));
  for (std::size_t id = 0; id < n; ++id) {
    const NodeId nid = static_cast<NodeId>(id);
    switch (c.op(nid)) {
      case Circuit::Op::var:
        d[id] = leaf_deg(c.var_of(nid));
        break;
      case Circuit::Op::constant:
        break;
      case Circuit::Op::sum:
        for (std::size_t k = 0; k < c.fanin(nid); ++k)
          d[id] = std::max(d[id], d[c.child(nid, k)]);
        break;
      case Circuit::Op::prod:
        for (std::size_t k = 0; k < c.fanin(nid); ++k) d[id] += d[c.child(nid, k)];
        break;
    }
  }
  return d[c.output()];
}

std::string point_str(const Assignment& a) {
  std::string s;
  for (const auto& [v, val] : a) {
    if (!s.empty()) s += ", ";
    s += v.name() + "=" + val.get_num().get_str();
  }
  return s;
}

// Shared Schwartz-Zippel skeleton: compares lhs(point) against rhs(point)
// over integer points with 64-bit coordinates, reporting the union bound.
template <class Lhs, class Rhs>
PitReport pit_run(const std::vector<VariableId>& vars, Int degree_bound, std::uint64_t seed,
                  std::size_t trials, Lhs&& lhs, Rhs&& rhs) {
  PitReport rep;
  rep.trials = trials;
  Rat per = Rat(degree_bound) / Rat(Int(1) << 64);
  if (per > 1) per = 1;
  if (per < 0) per = 0;
  rep.per_trial_bound = per;
  rep.overall_bound = 1;
  for (std::size_t t = 0; t < trials; ++t) rep.overall_bound *= per;
  for (std::size_t t = 0; t < trials; ++t) {
    std::uint64_t state =
        (seed ^ 0xcafe1845c1f3a90bULL) + 0x9e3779b97f4a7c15ULL * (t + 1);
    Assignment a;
    for (const VariableId& v : vars)
      a.emplace(v, Rat(Int(static_cast<unsigned long>(splitmix64(state)))));
    if (lhs(a) != rhs(a)) {
      rep.equal = false;
      rep.counterexample = point_str(a);
      return rep;
    }
  }
  return rep;
}

// Randomized check of one proof condition: substitute images (or zeros) for
// the placeholders and compare with the given right-hand side at points.
PitReport pit_statement(const Circuit& c, const IpsStatement& stmt, bool zero_placeholders,
                        const Polynomial& rhs_poly, std::uint64_t seed, std::size_t trials) {
  const std::vector<VariableId> vars = ordinary_vars(c, stmt);
  Int deg = syntactic_degree(c, [&](const VariableId& v) -> Int {
    Placeholder ph = classify(v, stmt);
    if (ph.kind == Placeholder::none) return 1;
    if (zero_placeholders) return 0;
    if (ph.kind == Placeholder::axiom) return std::max(0, stmt.axioms[ph.index].degree());
    return 2;
  });
  if (rhs_poly.degree() > 0) deg = std::max(deg, Int(rhs_poly.degree()));
  auto lhs = [&](const Assignment& a) {
    Assignment full = a;
    for (const VariableId& v : c.variables()) {
      Placeholder ph = classify(v, stmt);
      if (ph.kind == Placeholder::none) continue;
      if (zero_placeholders) {
        full.emplace(v, Rat(0));
      } else if (ph.kind == Placeholder::axiom) {
        full.emplace(v, stmt.axioms[ph.index].evaluate(a));
      } else {
        Rat x = a.at(stmt.bool_vars[ph.index]);
        full.emplace(v, x * x - x);
      }
    }
    return c.evaluate(full);
  };
  auto rhs = [&](const Assignment& a) { return rhs_poly.evaluate(a); };
  return pit_run(vars, deg, seed, trials, lhs, rhs);
}

} // namespace

// ---------------------------------------------------------------------------
// the verifier

IpsVerdict verify_ips(const Circuit& proof, const IpsStatement& stmt, IpsClass declared,
                      const VerifyOptions& opts) {
  validate_statement(stmt);
  for (const VariableId& v : proof.variables()) classify(v, stmt);  // arity validation

  IpsVerdict verdict;
  verdict.pass = true;

  if (auto sf = make_stream_form(proof, stmt)) {
    if (auto bad = stream_zero_origin(*sf)) return *bad;

    ScreenData sd = screen_residues(*sf);
    if (sd.usable) {
      for (std::size_t t = 0; t < 2; ++t) {
        PointEval pe = screen_eval(*sf, sd, opts.seed, t);
        if (pe.proof != pe.target)
          return fail_verdict(
              IpsCondition::certifies_target,
              "after substituting the axioms, proof and target differ at seeded point #" +
                  std::to_string(t) + " modulo 2^61-1 (" + std::to_string(pe.proof) + " vs " +
                  std::to_string(pe.target) + "), so the identity cannot hold");
      }
    }
    if (sf->pair_count <= opts.expansion_cap) {
      if (auto bad = sweep_mismatch(*sf)) return *bad;
    } else if (opts.allow_pit) {
      PitReport rep = pit_statement(proof, stmt, false, stmt.target, opts.seed, opts.pit_trials);
      if (!rep.equal)
        return fail_verdict(IpsCondition::certifies_target,
                            "after substituting the axioms, proof and target differ at the "
                            "sampled point " +
                                rep.counterexample);
      verdict.exact = false;
      verdict.error_bound += rep.overall_bound;
      verdict.detail = "target certification sampled at " + std::to_string(rep.trials) +
                       " points; false-accept bound " + rat_to_string(rep.overall_bound);
    } else {
      fail(errc::cap, "certifying the target needs " + std::to_string(sf->pair_count) +
                          " coefficient contributions, above the expansion cap of " +
                          std::to_string(opts.expansion_cap));
    }
    if (auto bad = stream_class_violation(*sf, declared, stmt.axioms.size())) return *bad;
    return verdict;
  }

  // general shape: Polynomial expansion, randomized beyond the cap
  try {
    Polynomial p0 = proof.expand(zero_subst(proof, stmt), opts.expansion_cap);
    if (!p0.is_zero()) {
      const Term& lt = p0.leading_term(MonomialOrder::grlex);
      return fail_verdict(IpsCondition::zero_at_origin,
                          "zeroing every placeholder leaves the monomial " + lt.mono.str() +
                              " with coefficient " + rat_to_string(lt.coeff));
    }
  } catch (const error& e) {
    if (e.kind() != errc::cap || !opts.allow_pit) throw;
    PitReport rep = pit_statement(proof, stmt, true, Polynomial::zero(), opts.seed, opts.pit_trials);
    if (!rep.equal)
      return fail_verdict(IpsCondition::zero_at_origin,
                          "with placeholders zeroed the proof is nonzero at the sampled point " +
                              rep.counterexample);
    verdict.exact = false;
    verdict.error_bound += rep.overall_bound;
  }

  try {
    Polynomial pc = proof.expand(image_subst(proof, stmt), opts.expansion_cap);
    if (!(pc == stmt.target)) {
      Polynomial diff = pc - stmt.target;
      const Monomial& m = diff.leading_monomial(MonomialOrder::grlex);
      return fail_verdict(IpsCondition::certifies_target,
                          "coefficient of " + m.str() + ": the expansion gives " +
                              rat_to_string(pc.coeff(m)) + ", the target needs " +
                              rat_to_string(stmt.target.coeff(m)));
    }
  } catch (const error& e) {
    if (e.kind() != errc::cap || !opts.allow_pit) throw;
    PitReport rep = pit_statement(proof, stmt, false, stmt.target, opts.seed, opts.pit_trials);
    if (!rep.equal)
      return fail_verdict(IpsCondition::certifies_target,
                          "after substituting the axioms, proof and target differ at the "
                          "sampled point " +
                              rep.counterexample);
    verdict.exact = false;
    verdict.error_bound += rep.overall_bound;
    verdict.detail = "identities sampled; total false-accept bound " +
                     rat_to_string(verdict.error_bound);
  }

  // class membership is a degree property of the computed polynomial;
  // sampling cannot certify it, so beyond the cap this check must throw
  if (declared == IpsClass::mlips) {
    Substitution zb;
    for (const VariableId& v : proof.variables())
      if (classify(v, stmt).kind == Placeholder::boolean) zb.emplace(v, Polynomial::zero());
    Polynomial q = proof.expand(zb, opts.expansion_cap);
    if (!q.is_multilinear()) {
      for (const Term& t : q.terms())
        if (!t.mono.is_multilinear())
          return fail_verdict(IpsCondition::declared_class,
                              "with Boolean placeholders zeroed the proof computes the "
                              "non-multilinear monomial " +
                                  t.mono.str() + " with coefficient " + rat_to_string(t.coeff));
    }
  } else if (declared == IpsClass::linear || declared == IpsClass::lips) {
    Polynomial q = proof.expand(Substitution{}, opts.expansion_cap);
    for (const VariableId& v : proof.variables()) {
      Placeholder ph = classify(v, stmt);
      bool constrained = ph.kind == Placeholder::axiom ||
                         (declared == IpsClass::linear && ph.kind == Placeholder::boolean);
      if (!constrained) continue;
      int dv = q.individual_degree(v);
      if (dv > 1)
        return fail_verdict(IpsCondition::declared_class,
                            "the computed polynomial has individual degree " +
                                std::to_string(dv) + " in the placeholder " + v.name());
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// randomized identity tests

PitReport random_identity_test(const Circuit& proof, const IpsStatement& stmt,
                               std::uint64_t seed, std::size_t trials) {
  validate_statement(stmt);
  for (const VariableId& v : proof.variables()) classify(v, stmt);
  return pit_statement(proof, stmt, false, stmt.target, seed, trials);
}

PitReport random_identity_test(const Circuit& a, const Circuit& b, std::uint64_t seed,
                               std::size_t trials) {
  std::set<VariableId> vs;
  for (const VariableId& v : a.variables()) vs.insert(v);
  for (const VariableId& v : b.variables()) vs.insert(v);
  auto one = [](const VariableId&) { return Int(1); };
  Int deg = std::max(syntactic_degree(a, one), syntactic_degree(b, one));
  return pit_run(
      std::vector<VariableId>(vs.begin(), vs.end()), deg, seed, trials,
      [&](const Assignment& p) { return a.evaluate(p); },
      [&](const Assignment& p) { return b.evaluate(p); });
}

PitReport random_identity_test(const Circuit& a, const Polynomial& b, std::uint64_t seed,
                               std::size_t trials) {
  std::set<VariableId> vs;
  for (const VariableId& v : a.variables()) vs.insert(v);
  for (const VariableId& v : b.support()) vs.insert(v);
  Int deg = syntactic_degree(a, [](const VariableId&) { return Int(1); });
  deg = std::max(deg, Int(std::max(0, b.degree())));
  return pit_run(
      std::vector<VariableId>(vs.begin(), vs.end()), deg, seed, trials,
      [&](const Assignment& p) { return a.evaluate(p); },
      [&](const Assignment& p) { return b.evaluate(p); });
}

// ---------------------------------------------------------------------------
// construction

namespace {

// Sorts parallel (keys, coeffs) descending by key and merges equal keys
// exactly, dropping zero sums.
void group_terms(std::vector<std::uint64_t>& keys, std::vector<Rat>& coeffs) {
  std::vector<std::uint32_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(),
            [&](std::uint32_t a, std::uint32_t b) { return keys[a] > keys[b]; });
  std::vector<std::uint64_t> out_k;
  std::vector<Rat> out_c;
  out_k.reserve(keys.size());
  out_c.reserve(keys.size());
  std::size_t i = 0;
  Rat acc;
  while (i < idx.size()) {
    const std::uint64_t key = keys[idx[i]];
    std::size_t j = i;
    acc = 0;
    for (; j < idx.size() && keys[idx[j]] == key; ++j)
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), coeffs[idx[j]].get_mpq_t());
    if (acc != 0) {
      out_k.push_back(key);
      out_c.push_back(acc);
    }
    i = j;
  }
  keys = std::move(out_k);
  coeffs = std::move(out_c);
}

} // namespace

Refutation build_refutation(const Polynomial& f, long var_cap) {
  const std::vector<VariableId> vars = f.support();
  for (const VariableId& v : vars)
    if (placeholder_shaped(v))
      fail(errc::domain,
           "the axiom mentions " + v.name() + ", which is reserved as a proof placeholder");
  if (vars.size() > static_cast<std::size_t>(PackedCtx::max_vars))
    fail(errc::cap, "refutations are built over at most " +
                        std::to_string(PackedCtx::max_vars) + " variables; the axiom has " +
                        std::to_string(vars.size()));
  Polynomial g = boolean_inverse(f, var_cap);

  Refutation out;
  out.stmt.axioms = {f};
  out.stmt.bool_vars = vars;
  out.stmt.target = Polynomial::one();
  out.cls = IpsClass::mlips;

  Circuit& c = out.proof;
  std::map<VariableId, NodeId> leaves;
  auto leaf_of = [&](const VariableId& v) {
    auto it = leaves.find(v);
    if (it != leaves.end()) return it->second;
    NodeId id = c.add_var(v);
    leaves.emplace(v, id);
    return id;
  };
  std::vector<Circuit::SumArg> args;
  auto emit = [&](const Monomial& m, const Rat& coeff, NodeId tail) {
    std::vector<NodeId> kids;
    for (const VarExp& e : m.factors())
      for (int t = 0; t < e.exp; ++t) kids.push_back(leaf_of(e.var));
    kids.push_back(tail);
    args.push_back({kids.size() == 1 ? tail : c.add_prod(kids), coeff});
  };

  const NodeId y_leaf = c.add_var(VariableId::y(1));
  for (const Term& t : g.terms()) emit(t.mono, t.coeff, y_leaf);

  // quotients of 1 - g*f against the Boolean axioms, taken variable by
  // variable in ascending order; the remainder must vanish identically
  auto ctx = PackedCtx::over(vars);
  auto pg = ctx ? detail::pack_poly(*ctx, g) : std::nullopt;
  auto pf = ctx ? detail::pack_poly(*ctx, f) : std::nullopt;
  bool packed_ok = ctx && pg && pf;
  if (packed_ok) {
    // product keys add exponent fields, which needs headroom
    const int nv = static_cast<int>(ctx->vars().size());
    std::array<int, PackedCtx::max_vars> gmax{}, fmax{};
    int gdeg = 0, fdeg = 0;
    for (std::uint64_t k : pg->keys) {
      gdeg = std::max(gdeg, PackedCtx::total_degree(k));
      for (int i = 0; i < nv; ++i) gmax[i] = std::max(gmax[i], ctx->exp_at(k, i));
    }
    for (std::uint64_t k : pf->keys) {
      fdeg = std::max(fdeg, PackedCtx::total_degree(k));
      for (int i = 0; i < nv; ++i) fmax[i] = std::max(fmax[i], ctx->exp_at(k, i));
    }
    for (int i = 0; i < nv; ++i)
      if (gmax[i] + fmax[i] > 7) packed_ok = false;
    if (gdeg + fdeg > 127) packed_ok = false;
  }

  if (packed_ok && g.size() * f.size() > 4096) {
    const int nv = static_cast<int>(ctx->vars().size());
    const std::size_t npairs = g.size() * f.size();
    if (npairs > 120'000'000)
      fail(errc::cap, "building the refutation needs " + std::to_string(npairs) +
                          " product terms, beyond the construction guard");
    // r = 1 - g*f, merged exactly
    struct PPair {
      std::uint64_t key;
      std::uint32_t gi, fi;
    };
    std::vector<PPair> pairs;
    pairs.reserve(npairs);
    for (std::uint32_t gi = 0; gi < pg->keys.size(); ++gi)
      for (std::uint32_t fi = 0; fi < pf->keys.size(); ++fi)
        pairs.push_back({pg->keys[gi] + pf->keys[fi], gi, fi});
    std::sort(pairs.begin(), pairs.end(),
              [](const PPair& a, const PPair& b) { return a.key > b.key; });
    std::vector<std::uint64_t> rk;
    std::vector<Rat> rc;
    const auto& gt = g.terms();
    const auto& ft = f.terms();
    {
      std::size_t i = 0;
      Rat acc, prod;
      while (i < pairs.size()) {
        const std::uint64_t key = pairs[i].key;
        std::size_t j = i;
        acc = 0;
        for (; j < pairs.size() && pairs[j].key == key; ++j) {
          mpq_mul(prod.get_mpq_t(), gt[pairs[j].gi].coeff.get_mpq_t(),
                  ft[pairs[j].fi].coeff.get_mpq_t());
          mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), prod.get_mpq_t());
        }
        if (acc != 0) {
          rk.push_back(key);
          rc.push_back(-acc);
        }
        i = j;
      }
    }
    pairs.clear();
    pairs.shrink_to_fit();
    if (!rk.empty() && rk.back() == 0) {
      rc.back() += 1;
      if (rc.back() == 0) {
        rk.pop_back();
        rc.pop_back();
      }
    } else {
      rk.push_back(0);
      rc.push_back(Rat(1));
    }

    std::vector<std::vector<std::uint64_t>> qk(nv);
    std::vector<std::vector<Rat>> qc(nv);
    std::vector<std::uint64_t> remk;
    std::vector<Rat> remc;
    std::array<int, PackedCtx::max_vars> exps{};
    std::array<std::uint64_t, PackedCtx::max_vars + 1> suffix{};
    for (std::size_t ti = 0; ti < rk.size(); ++ti) {
      const std::uint64_t key = rk[ti];
      for (int i = 0; i < nv; ++i) exps[i] = ctx->exp_at(key, i);
      suffix[nv] = 0;
      for (int i = nv; i-- > 0;)
        suffix[i] = suffix[i + 1] + (exps[i] ? ctx->make_key(i, exps[i]) : 0);
      std::uint64_t mlk = 0;
      for (int i = 0; i < nv; ++i) {
        const int e = exps[i];
        if (e >= 2) {
          // v^e = v + (v^2 - v) * (1 + v + ... + v^(e-2))
          for (int j = 0; j <= e - 2; ++j) {
            qk[i].push_back(mlk + (j ? ctx->make_key(i, j) : 0) + suffix[i + 1]);
            qc[i].push_back(rc[ti]);
          }
        }
        if (e) mlk += ctx->make_key(i, 1);
      }
      remk.push_back(mlk);
      remc.push_back(rc[ti]);
    }
    group_terms(remk, remc);
    if (!remk.empty())
      fail(errc::domain, "internal inconsistency: 1 - g*f has a nonzero multilinear remainder");
    for (int i = 0; i < nv; ++i) {
      group_terms(qk[i], qc[i]);
      if (qk[i].empty()) continue;
      const int zi = i + 1;  // bool_vars is exactly ctx->vars()
      const NodeId z_leaf = leaf_of(VariableId::z(zi));
      for (std::size_t t = 0; t < qk[i].size(); ++t)
        emit(ctx->unpack(qk[i][t]), qc[i][t], z_leaf);
    }
  } else {
    Polynomial r = Polynomial::one() - g * f;
    ReduceResult red = multilinear_reduce(r);
    if (!red.remainder.is_zero())
      fail(errc::domain, "internal inconsistency: 1 - g*f has a nonzero multilinear remainder");
    for (const auto& [v, h] : red.quotients) {
      const auto pos = std::lower_bound(vars.begin(), vars.end(), v);
      const int zi = static_cast<int>(pos - vars.begin()) + 1;
      const NodeId z_leaf = leaf_of(VariableId::z(zi));
      for (const Term& t : h.terms()) emit(t.mono, t.coeff, z_leaf);
    }
  }

  c.set_output(c.add_sum(args));
  return out;
}

Polynomial extract_g(const Circuit& proof, const IpsStatement& stmt,
                     std::size_t expansion_cap) {
  validate_statement(stmt);
  if (stmt.axioms.size() != 1)
    fail(errc::domain, "g extraction needs exactly one axiom; the statement has " +
                           std::to_string(stmt.axioms.size()));
  for (const VariableId& v : proof.variables()) classify(v, stmt);

  if (auto sf = make_stream_form(proof, stmt)) {
    // with Boolean placeholders zeroed the stream reads  sum c*m*y  +
    // sum c*m; the placeholder-free part must vanish for the g*y shape
    std::vector<Term> loose, gterms;
    for (const StreamArg& a : sf->args) {
      if (a.image == 0) loose.push_back({sf->ctx.unpack(a.base), a.coeff});
      if (a.image == 1) gterms.push_back({sf->ctx.unpack(a.base), a.coeff});
    }
    Polynomial stray = Polynomial::from_terms(std::move(loose));
    if (!stray.is_zero()) {
      const Term& lt = stray.leading_term(MonomialOrder::grlex);
      fail(errc::domain, "the proof is not a multiple of the axiom placeholder: the monomial " +
                             lt.mono.str() + " survives with coefficient " +
                             rat_to_string(lt.coeff));
    }
    return Polynomial::from_terms(std::move(gterms));
  }

  Substitution zonly, zy;
  for (const VariableId& v : proof.variables()) {
    Placeholder ph = classify(v, stmt);
    if (ph.kind == Placeholder::boolean) {
      zonly.emplace(v, Polynomial::zero());
      zy.emplace(v, Polynomial::zero());
    }
    if (ph.kind == Placeholder::axiom) zy.emplace(v, Polynomial::one());
  }
  Polynomial ghat = proof.expand(zy, expansion_cap);
  Polynomial lhs = proof.expand(zonly, expansion_cap);
  if (!(lhs == ghat * Polynomial::var(VariableId::y(1))))
    fail(errc::domain,
         "the proof is not a multiple of the axiom placeholder: zeroing the Boolean "
         "placeholders does not factor as g*y.1");
  return ghat;
}

} // namespace kslab
