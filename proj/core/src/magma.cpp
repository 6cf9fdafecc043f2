#include "ehkit/magma.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace ehkit {

namespace {

std::string tuple_str(std::initializer_list<Value> xs) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (Value x : xs) {
    os << (first ? "" : ",") << x;
    first = false;
  }
  os << ')';
  return os.str();
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool in_range(const std::vector<Value>& v, std::size_t n) {
  return std::all_of(v.begin(), v.end(), [n](Value x) { return x < n; });
}

// Shape problems are reported rather than thrown, so a report can describe
// any candidate.
std::optional<ValidityReport> shape_error(const CpUnitalMagma& m) {
  const CoefficientSystem& b = m.base;
  const std::size_t ne = b.size_e;
  const std::size_t ng = b.size_G;
  if (!is_prime(b.p)) return ValidityReport::fail("p is prime", std::to_string(b.p));
  if (ne == 0 || ng == 0) return ValidityReport::fail("carriers nonempty", "");
  if (b.sigma.size() != ne || !in_range(b.sigma, ne)) {
    return ValidityReport::fail("action table shape", "");
  }
  if (b.r.size() != ng || !in_range(b.r, ne)) {
    return ValidityReport::fail("restriction table shape", "");
  }
  if (m.mul_e.size() != ne * ne || !in_range(m.mul_e, ne) || m.unit_e >= ne) {
    return ValidityReport::fail("level-e multiplication shape", "");
  }
  if (m.mul_G.size() != ng * ng || !in_range(m.mul_G, ng) || m.unit_G >= ng) {
    return ValidityReport::fail("level-G multiplication shape", "");
  }
  if (m.t.size() != ne || !in_range(m.t, ng)) {
    return ValidityReport::fail("transfer table shape", "");
  }
  return std::nullopt;
}

Value target_power(const CpUnitalMagma& m, Value x, PowerReading reading) {
  return reading == PowerReading::literal ? power_e(m, x) : norm_e(m, x);
}

// Axioms of a C_p-unital magma other than the r∘t law.
ValidityReport check_structure(const CpUnitalMagma& m) {
  if (auto e = shape_error(m)) return *e;
  const CoefficientSystem& b = m.base;
  const auto ne = static_cast<Value>(b.size_e);
  const auto ng = static_cast<Value>(b.size_G);
  for (Value x = 0; x < ne; ++x) {
    if (b.act(b.p, x) != x) {
      return ValidityReport::fail("action: sigma^p = id", tuple_str({x}));
    }
  }
  for (Value y = 0; y < ng; ++y) {
    if (b.sigma[b.r[y]] != b.r[y]) {
      return ValidityReport::fail("r lands in fixed points", tuple_str({y}));
    }
  }
  for (Value x = 0; x < ne; ++x) {
    if (m.me(m.unit_e, x) != x || m.me(x, m.unit_e) != x) {
      return ValidityReport::fail("unit at level e", tuple_str({x}));
    }
  }
  for (Value y = 0; y < ng; ++y) {
    if (m.mg(m.unit_G, y) != y || m.mg(y, m.unit_G) != y) {
      return ValidityReport::fail("unit at level G", tuple_str({y}));
    }
  }
  if (b.sigma[m.unit_e] != m.unit_e) {
    return ValidityReport::fail("action preserves the unit", "");
  }
  for (Value x = 0; x < ne; ++x) {
    for (Value y = 0; y < ne; ++y) {
      if (b.sigma[m.me(x, y)] != m.me(b.sigma[x], b.sigma[y])) {
        return ValidityReport::fail("action is multiplicative", tuple_str({x, y}));
      }
    }
  }
  if (b.r[m.unit_G] != m.unit_e) {
    return ValidityReport::fail("r preserves the unit", "");
  }
  for (Value x = 0; x < ng; ++x) {
    for (Value y = 0; y < ng; ++y) {
      if (b.r[m.mg(x, y)] != m.me(b.r[x], b.r[y])) {
        return ValidityReport::fail("r is multiplicative", tuple_str({x, y}));
      }
    }
  }
  if (m.t[m.unit_e] != m.unit_G) {
    return ValidityReport::fail("t preserves the unit", "");
  }
  for (Value x = 0; x < ne; ++x) {
    for (Value y = 0; y < ne; ++y) {
      if (m.t[m.me(x, y)] != m.mg(m.t[x], m.t[y])) {
        return ValidityReport::fail("t is multiplicative", tuple_str({x, y}));
      }
    }
  }
  for (Value x = 0; x < ne; ++x) {
    if (m.t[b.sigma[x]] != m.t[x]) {
      return ValidityReport::fail("t is equivariant", tuple_str({x}));
    }
  }
  return ValidityReport::ok();
}

ValidityReport commutative_associative(const CpUnitalMagma& m) {
  const auto ne = static_cast<Value>(m.base.size_e);
  const auto ng = static_cast<Value>(m.base.size_G);
  for (Value a = 0; a < ne; ++a) {
    for (Value b = 0; b < ne; ++b) {
      if (m.me(a, b) != m.me(b, a)) {
        return ValidityReport::fail("commutative at level e", tuple_str({a, b}));
      }
      for (Value c = 0; c < ne; ++c) {
        if (m.me(m.me(a, b), c) != m.me(a, m.me(b, c))) {
          return ValidityReport::fail("associative at level e",
                                      tuple_str({a, b, c}));
        }
      }
    }
  }
  for (Value a = 0; a < ng; ++a) {
    for (Value b = 0; b < ng; ++b) {
      if (m.mg(a, b) != m.mg(b, a)) {
        return ValidityReport::fail("commutative at level G", tuple_str({a, b}));
      }
      for (Value c = 0; c < ng; ++c) {
        if (m.mg(m.mg(a, b), c) != m.mg(a, m.mg(b, c))) {
          return ValidityReport::fail("associative at level G",
                                      tuple_str({a, b, c}));
        }
      }
    }
  }
  return ValidityReport::ok();
}

}  // namespace

const char* to_string(PowerReading r) {
  return r == PowerReading::literal ? "literal" : "norm";
}

Value CoefficientSystem::act(unsigned k, Value x) const {
  for (unsigned i = 0; i < k % p; ++i) {
    x = sigma[x];
  }
  return x;
}

void validate_coefficient_system(const CoefficientSystem& c) {
  CpUnitalMagma probe{c,
                      Table(c.size_e * c.size_e, 0),
                      0,
                      Table(c.size_G * c.size_G, 0),
                      0,
                      FnTable(c.size_e, 0)};
  if (auto e = shape_error(probe)) {
    throw InputError("coefficient system: " + e->axiom);
  }
  for (Value x = 0; x < c.size_e; ++x) {
    Value y = x;
    for (unsigned k = 0; k < c.p; ++k) y = c.sigma[y];
    if (y != x) {
      throw InputError("coefficient system: sigma^p is not the identity at " +
                       std::to_string(x));
    }
  }
  for (Value y : c.r) {
    if (c.sigma[y] != y) {
      throw InputError("coefficient system: r leaves the fixed points");
    }
  }
}

CpUnitalMagma trivial_magma(unsigned p) {
  CpUnitalMagma m;
  m.base.p = p;
  return m;
}

Value power_e(const CpUnitalMagma& m, Value x) {
  Value acc = x;
  for (unsigned k = 1; k < m.base.p; ++k) {
    acc = m.me(acc, x);
  }
  return acc;
}

Value norm_e(const CpUnitalMagma& m, Value x) {
  Value acc = x;
  for (unsigned k = 1; k < m.base.p; ++k) {
    acc = m.me(acc, m.base.act(k, x));
  }
  return acc;
}

ValidityReport validate_magma(const CpUnitalMagma& m, PowerReading reading) {
  if (auto rep = check_structure(m); !rep) {
    return rep;
  }
  for (Value x = 0; x < m.base.size_e; ++x) {
    if (m.base.r[m.t[x]] != target_power(m, x, reading)) {
      return ValidityReport::fail(
          reading == PowerReading::literal ? "r(t(x)) = x^p" : "r(t(x)) = norm(x)",
          tuple_str({x}));
    }
  }
  return ValidityReport::ok();
}

ValidityReport check_homomorphism(const MagmaMap& f, const CpUnitalMagma& m,
                                  const CpUnitalMagma& n) {
  const auto ne = static_cast<Value>(m.base.size_e);
  const auto ng = static_cast<Value>(m.base.size_G);
  if (f.on_e.size() != ne || f.on_G.size() != ng ||
      !in_range(f.on_e, n.base.size_e) || !in_range(f.on_G, n.base.size_G) ||
      m.base.p != n.base.p) {
    return ValidityReport::fail("map shape", "");
  }
  if (f.on_e[m.unit_e] != n.unit_e || f.on_G[m.unit_G] != n.unit_G) {
    return ValidityReport::fail("preserves units", "");
  }
  for (Value a = 0; a < ne; ++a) {
    for (Value b = 0; b < ne; ++b) {
      if (f.on_e[m.me(a, b)] != n.me(f.on_e[a], f.on_e[b])) {
        return ValidityReport::fail("multiplicative at level e", tuple_str({a, b}));
      }
    }
  }
  for (Value a = 0; a < ng; ++a) {
    for (Value b = 0; b < ng; ++b) {
      if (f.on_G[m.mg(a, b)] != n.mg(f.on_G[a], f.on_G[b])) {
        return ValidityReport::fail("multiplicative at level G", tuple_str({a, b}));
      }
    }
  }
  for (Value x = 0; x < ne; ++x) {
    if (f.on_e[m.base.sigma[x]] != n.base.sigma[f.on_e[x]]) {
      return ValidityReport::fail("equivariant", tuple_str({x}));
    }
    if (f.on_G[m.t[x]] != n.t[f.on_e[x]]) {
      return ValidityReport::fail("intertwines t", tuple_str({x}));
    }
  }
  for (Value y = 0; y < ng; ++y) {
    if (f.on_e[m.base.r[y]] != n.base.r[f.on_G[y]]) {
      return ValidityReport::fail("intertwines r", tuple_str({y}));
    }
  }
  return ValidityReport::ok();
}

bool is_homomorphism(const MagmaMap& f, const CpUnitalMagma& m,
                     const CpUnitalMagma& n) {
  return check_homomorphism(f, m, n).valid;
}

MagmaMap compose(const MagmaMap& first, const MagmaMap& second) {
  MagmaMap out;
  for (Value x : first.on_e) out.on_e.push_back(second.on_e.at(x));
  for (Value y : first.on_G) out.on_G.push_back(second.on_G.at(y));
  return out;
}

MagmaMap identity_map(const CpUnitalMagma& m) {
  MagmaMap f;
  f.on_e.resize(m.base.size_e);
  f.on_G.resize(m.base.size_G);
  std::iota(f.on_e.begin(), f.on_e.end(), Value{0});
  std::iota(f.on_G.begin(), f.on_G.end(), Value{0});
  return f;
}

ValidityReport check_interchange(const InterchangePair& pair,
                                 PowerReading reading,
                                 bool transfer_interchange) {
  const CpUnitalMagma& s = pair.star;
  const CpUnitalMagma& b = pair.bullet;
  if (!(s.base == b.base)) {
    return ValidityReport::fail("shared coefficient system", "");
  }
  if (auto rep = validate_magma(s, reading); !rep) {
    return ValidityReport::fail("star: " + rep.axiom, rep.witness);
  }
  if (auto rep = validate_magma(b, reading); !rep) {
    return ValidityReport::fail("bullet: " + rep.axiom, rep.witness);
  }
  if (s.unit_e != b.unit_e || s.unit_G != b.unit_G) {
    return ValidityReport::fail("1_* = 1_bullet", "");
  }
  const auto ne = static_cast<Value>(s.base.size_e);
  const auto ng = static_cast<Value>(s.base.size_G);
  for (Value x = 0; x < ne; ++x) {
    for (Value y = 0; y < ne; ++y) {
      for (Value z = 0; z < ne; ++z) {
        for (Value w = 0; w < ne; ++w) {
          if (b.me(s.me(x, y), s.me(z, w)) != s.me(b.me(x, z), b.me(y, w))) {
            return ValidityReport::fail("interchange at level e",
                                        tuple_str({x, y, z, w}));
          }
        }
      }
    }
  }
  for (Value x = 0; x < ng; ++x) {
    for (Value y = 0; y < ng; ++y) {
      for (Value z = 0; z < ng; ++z) {
        for (Value w = 0; w < ng; ++w) {
          if (b.mg(s.mg(x, y), s.mg(z, w)) != s.mg(b.mg(x, z), b.mg(y, w))) {
            return ValidityReport::fail("interchange at level G",
                                        tuple_str({x, y, z, w}));
          }
        }
      }
    }
  }
  for (Value x = 0; x < ne; ++x) {
    for (Value y = 0; y < ne; ++y) {
      if (b.t[s.me(x, y)] != s.mg(b.t[x], b.t[y])) {
        return ValidityReport::fail("t_bullet is a *-homomorphism",
                                    tuple_str({x, y}));
      }
      if (s.t[b.me(x, y)] != b.mg(s.t[x], s.t[y])) {
        return ValidityReport::fail("t_* is a bullet-homomorphism",
                                    tuple_str({x, y}));
      }
    }
  }
  for (Value x = 0; x < ne; ++x) {
    if (s.base.r[b.t[x]] != target_power(s, x, reading)) {
      return ValidityReport::fail("r t_bullet = *-power", tuple_str({x}));
    }
    if (s.base.r[s.t[x]] != target_power(b, x, reading)) {
      return ValidityReport::fail("r t_* = bullet-power", tuple_str({x}));
    }
  }
  if (transfer_interchange) {
    const unsigned p = s.base.p;
    std::vector<Value> xs(p, 0);
    while (true) {
      Value ps = xs[0];
      Value pb = xs[0];
      for (unsigned k = 1; k < p; ++k) {
        ps = s.me(ps, xs[k]);
        pb = b.me(pb, xs[k]);
      }
      if (b.t[ps] != s.t[pb]) {
        std::ostringstream w;
        for (unsigned k = 0; k < p; ++k) w << (k ? "," : "(") << xs[k];
        w << ')';
        return ValidityReport::fail("t_bullet(x1*...*xp) = t_*(x1 bullet...xp)",
                                    w.str());
      }
      unsigned i = 0;
      while (i < p && xs[i] + 1 == ne) xs[i++] = 0;
      if (i == p) break;
      ++xs[i];
    }
  }
  return ValidityReport::ok();
}

SemiMackeyFunctor eckmann_hilton(const InterchangePair& pair,
                                 PowerReading reading) {
  if (auto rep = check_interchange(pair, reading); !rep) {
    throw InputError("eckmann_hilton: not an interchanging pair: " + rep.axiom +
                     " " + rep.witness);
  }
  const CpUnitalMagma& s = pair.star;
  const CpUnitalMagma& b = pair.bullet;
  const auto ne = static_cast<Value>(s.base.size_e);
  const auto ng = static_cast<Value>(s.base.size_G);
  for (Value x = 0; x < ne; ++x) {
    for (Value y = 0; y < ne; ++y) {
      if (s.me(x, y) != b.me(x, y)) {
        throw TheoremViolation("* = bullet at level e", tuple_str({x, y}));
      }
    }
  }
  for (Value x = 0; x < ng; ++x) {
    for (Value y = 0; y < ng; ++y) {
      if (s.mg(x, y) != b.mg(x, y)) {
        throw TheoremViolation("* = bullet at level G", tuple_str({x, y}));
      }
    }
  }
  for (Value x = 0; x < ne; ++x) {
    if (s.t[x] != b.t[x]) {
      throw TheoremViolation("t_* = t_bullet", tuple_str({x}));
    }
  }
  if (auto rep = commutative_associative(s); !rep) {
    throw TheoremViolation(rep.axiom, rep.witness);
  }
  SemiMackeyFunctor sm{s};
  if (auto rep = semi_mackey_check(sm); !rep) {
    throw TheoremViolation("semi-Mackey: " + rep.axiom, rep.witness);
  }
  return sm;
}

InterchangePair pair_of_semi_mackey(const SemiMackeyFunctor& sm) {
  if (auto rep = semi_mackey_check(sm); !rep) {
    throw InputError("pair_of_semi_mackey: invalid functor: " + rep.axiom + " " +
                     rep.witness);
  }
  return {sm.structure, sm.structure};
}

// --- Spans --------------------------------------------------------------------

namespace {

Span make_transfer_span(const GroupPtr& g) {
  const Subgroup whole = Subgroup::whole(g);
  const GSet free = GSet::cosets(whole, Subgroup::trivial(g));
  const GSet pt = GSet::point(whole);
  return Span(GSetMap::identity(free),
              GSetMap(free, pt, std::vector<Point>(free.size(), 0)));
}

Span make_restriction_span(const GroupPtr& g) {
  const Subgroup whole = Subgroup::whole(g);
  const GSet free = GSet::cosets(whole, Subgroup::trivial(g));
  const GSet pt = GSet::point(whole);
  return Span(GSetMap(free, pt, std::vector<Point>(free.size(), 0)),
              GSetMap::identity(free));
}

// The exponent k with σ^k · base = x in a transitive free C_p-set.
unsigned shift_of(const GSet& s, Point x) {
  for (Elem k = 0; k < s.acting().ambient().order(); ++k) {
    if (s.act(k, 0) == x) return k;
  }
  throw InputError("span: point outside the base orbit");
}

}  // namespace

namespace {

// One group object per p, so spans built separately compose.
GroupPtr shared_cyclic(unsigned p) {
  static std::mutex mu;
  static std::map<unsigned, GroupPtr> cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto& g = cache[p];
  if (!g) g = cyclic_group(p);
  return g;
}

}  // namespace

Span transfer_span(unsigned p) { return make_transfer_span(shared_cyclic(p)); }
Span restriction_span(unsigned p) {
  return make_restriction_span(shared_cyclic(p));
}

Value evaluate_span(const SemiMackeyFunctor& sm, const Span& span, Value x) {
  const CpUnitalMagma& m = sm.structure;
  const unsigned p = m.base.p;
  const GSet& src = span.source();
  const GSet& dst = span.target();
  if (src.acting().order() != p || src.acting().ambient().order() != p) {
    throw InputError("span: not a span of C_p-sets");
  }
  auto kind = [&](const GSet& s) {
    if (s.size() == 1) return false;  // ∗
    if (s.size() == p) return true;   // C_p/e
    throw InputError("span: endpoints must be single orbits");
  };
  const bool src_free = kind(src);
  const bool dst_free = kind(dst);
  if (src.orbits().size() != 1 || dst.orbits().size() != 1) {
    throw InputError("span: endpoints must be single orbits");
  }
  Value acc = dst_free ? m.unit_e : m.unit_G;
  for (const auto& orbit : span.apex().orbits()) {
    const Point o = orbit.front();
    const bool free = orbit.size() == p;
    Value v = x;
    // Restriction along the left leg.
    if (free && src_free) {
      v = m.base.act(shift_of(src, span.left()(o)), v);
    } else if (free) {
      v = m.base.r[v];
    }
    // Transfer along the right leg.
    if (free && dst_free) {
      v = m.base.act(p - shift_of(dst, span.right()(o)) % p, v);
      acc = m.me(acc, v);
    } else if (free) {
      acc = m.mg(acc, m.t[v]);
    } else if (dst_free) {
      throw InputError("span: a fixed point cannot map to a free orbit");
    } else {
      acc = m.mg(acc, v);
    }
  }
  return acc;
}

ValidityReport semi_mackey_check(const SemiMackeyFunctor& sm) {
  const CpUnitalMagma& m = sm.structure;
  if (auto rep = check_structure(m); !rep) return rep;
  if (auto rep = commutative_associative(m); !rep) return rep;
  const GroupPtr g = shared_cyclic(m.base.p);
  const Span tr = make_transfer_span(g);
  const Span res = make_restriction_span(g);
  const Span both = compose_spans(tr, res);
  for (Value x = 0; x < m.base.size_e; ++x) {
    const Value via_spans = evaluate_span(sm, both, x);
    const Value stepwise = evaluate_span(sm, res, evaluate_span(sm, tr, x));
    if (stepwise != m.base.r[m.t[x]]) {
      throw InputError("semi_mackey_check: span evaluator disagrees with r, t");
    }
    if (via_spans != stepwise) {
      return ValidityReport::fail("double-coset law r(t(x)) = prod g.x",
                                  tuple_str({x}));
    }
  }
  return ValidityReport::ok();
}

SemiMackeyFunctor fixed_point_functor(unsigned p, std::size_t n,
                                      const Table& mul, Value unit) {
  CpUnitalMagma m;
  m.base.p = p;
  m.base.size_e = n;
  m.base.size_G = n;
  m.base.sigma.resize(n);
  std::iota(m.base.sigma.begin(), m.base.sigma.end(), Value{0});
  m.base.r = m.base.sigma;
  m.mul_e = mul;
  m.mul_G = mul;
  m.unit_e = unit;
  m.unit_G = unit;
  m.t.resize(n);
  for (Value x = 0; x < n; ++x) {
    m.t[x] = power_e(m, x);
  }
  return {m};
}

// --- Canonical forms --------------------------------------------------------------

namespace {

constexpr std::size_t kMaxCanonicalSize = 6;

CpUnitalMagma relabel(const CpUnitalMagma& m, const std::vector<Value>& pe,
                      const std::vector<Value>& pg) {
  CpUnitalMagma out = m;
  const std::size_t ne = m.base.size_e;
  const std::size_t ng = m.base.size_G;
  for (Value x = 0; x < ne; ++x) {
    out.base.sigma[pe[x]] = pe[m.base.sigma[x]];
    out.t[pe[x]] = pg[m.t[x]];
    for (Value y = 0; y < ne; ++y) {
      out.mul_e[pe[x] * ne + pe[y]] = pe[m.me(x, y)];
    }
  }
  for (Value x = 0; x < ng; ++x) {
    out.base.r[pg[x]] = pe[m.base.r[x]];
    for (Value y = 0; y < ng; ++y) {
      out.mul_G[pg[x] * ng + pg[y]] = pg[m.mg(x, y)];
    }
  }
  out.unit_e = pe[m.unit_e];
  out.unit_G = pg[m.unit_G];
  return out;
}

void append_key(std::vector<Value>& key, const CpUnitalMagma& m,
                bool with_base) {
  if (with_base) {
    key.insert(key.end(), m.base.sigma.begin(), m.base.sigma.end());
    key.insert(key.end(), m.base.r.begin(), m.base.r.end());
  }
  key.push_back(m.unit_e);
  key.push_back(m.unit_G);
  key.insert(key.end(), m.mul_e.begin(), m.mul_e.end());
  key.insert(key.end(), m.mul_G.begin(), m.mul_G.end());
  key.insert(key.end(), m.t.begin(), m.t.end());
}

// Permutations of {0..n-1} sending `unit` to 0.
std::vector<std::vector<Value>> unit_fixing_perms(std::size_t n, Value unit) {
  if (n > kMaxCanonicalSize) {
    throw GuardError("canonical form: carrier larger than " +
                     std::to_string(kMaxCanonicalSize));
  }
  std::vector<Value> rest;
  for (Value i = 1; i < n; ++i) rest.push_back(i);
  std::vector<std::vector<Value>> out;
  do {
    std::vector<Value> perm(n, 0);
    Value k = 0;
    for (Value x = 0; x < n; ++x) {
      perm[x] = x == unit ? 0 : rest[k++];
    }
    out.push_back(std::move(perm));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

template <class Obj, class Relabel, class Key>
Obj least_relabeling(const Obj& obj, const CpUnitalMagma& shape, Relabel rel,
                     Key key) {
  std::optional<std::vector<Value>> best_key;
  std::optional<Obj> best;
  for (const auto& pe : unit_fixing_perms(shape.base.size_e, shape.unit_e)) {
    for (const auto& pg : unit_fixing_perms(shape.base.size_G, shape.unit_G)) {
      Obj cand = rel(obj, pe, pg);
      std::vector<Value> k = key(cand);
      if (!best_key || k < *best_key) {
        best_key = std::move(k);
        best = std::move(cand);
      }
    }
  }
  return *best;
}

}  // namespace

InterchangePair canonical_form(const InterchangePair& pair) {
  return least_relabeling(
      pair, pair.star,
      [](const InterchangePair& q, const auto& pe, const auto& pg) {
        return InterchangePair{relabel(q.star, pe, pg), relabel(q.bullet, pe, pg)};
      },
      [](const InterchangePair& q) {
        std::vector<Value> k{q.star.base.p, static_cast<Value>(q.star.base.size_e),
                             static_cast<Value>(q.star.base.size_G)};
        append_key(k, q.star, true);
        append_key(k, q.bullet, false);
        return k;
      });
}

SemiMackeyFunctor canonical_form(const SemiMackeyFunctor& sm) {
  return least_relabeling(
      sm, sm.structure,
      [](const SemiMackeyFunctor& q, const auto& pe, const auto& pg) {
        return SemiMackeyFunctor{relabel(q.structure, pe, pg)};
      },
      [](const SemiMackeyFunctor& q) {
        const CpUnitalMagma& m = q.structure;
        std::vector<Value> k{m.base.p, static_cast<Value>(m.base.size_e),
                             static_cast<Value>(m.base.size_G)};
        append_key(k, m, true);
        append_key(k, m, false);
        return k;
      });
}

// --- Enumeration -------------------------------------------------------------------

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// All functions {0..n-1} → {0..m-1} with f(0) = 0, as an odometer.
std::vector<FnTable> pointed_functions(std::size_t n, std::size_t m) {
  std::vector<FnTable> out;
  FnTable f(n, 0);
  while (true) {
    out.push_back(f);
    std::size_t i = 1;
    while (i < n && f[i] + 1 == m) {
      f[i] = 0;
      ++i;
    }
    if (i >= n) break;
    ++f[i];
  }
  return out;
}

// Unital tables with unit 0 whose entries off the unit row/column range freely.
std::vector<Table> unital_tables(std::size_t n) {
  std::vector<Table> out;
  const std::size_t cells = (n - 1) * (n - 1);
  std::vector<Value> free(cells, 0);
  while (true) {
    Table t(n * n, 0);
    for (Value a = 0; a < n; ++a) {
      t[a] = a;
      t[a * n] = a;
    }
    for (std::size_t k = 0; k < cells; ++k) {
      t[(k / (n - 1) + 1) * n + (k % (n - 1) + 1)] = free[k];
    }
    out.push_back(std::move(t));
    std::size_t i = 0;
    while (i < cells && free[i] + 1 == n) {
      free[i] = 0;
      ++i;
    }
    if (i >= cells) break;
    ++free[i];
  }
  return out;
}

bool equivariant_table(const Table& t, std::size_t n, const FnTable& sigma) {
  for (Value a = 0; a < n; ++a) {
    for (Value b = 0; b < n; ++b) {
      if (sigma[t[a * n + b]] != t[sigma[a] * n + sigma[b]]) return false;
    }
  }
  return true;
}

bool interchanges(const Table& s, const Table& b, std::size_t n) {
  for (Value x = 0; x < n; ++x)
    for (Value y = 0; y < n; ++y)
      for (Value z = 0; z < n; ++z)
        for (Value w = 0; w < n; ++w)
          if (b[s[x * n + y] * n + s[z * n + w]] !=
              s[b[x * n + z] * n + b[y * n + w]])
            return false;
  return true;
}

bool commutative_monoid(const Table& t, std::size_t n) {
  for (Value a = 0; a < n; ++a)
    for (Value b = 0; b < n; ++b) {
      if (t[a * n + b] != t[b * n + a]) return false;
      for (Value c = 0; c < n; ++c)
        if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]]) return false;
    }
  return true;
}

bool is_hom(const FnTable& f, const Table& src, std::size_t ns, const Table& dst,
            std::size_t nd) {
  for (Value a = 0; a < ns; ++a)
    for (Value b = 0; b < ns; ++b)
      if (f[src[a * ns + b]] != dst[f[a] * nd + f[b]]) return false;
  return true;
}

// σ with σ(0) = 0 and σ^p = id.
std::vector<FnTable> actions(std::size_t n, unsigned p) {
  std::vector<FnTable> out;
  FnTable s(n);
  std::iota(s.begin(), s.end(), Value{0});
  do {
    if (s[0] != 0) continue;
    bool ok = true;
    for (Value x = 0; x < n && ok; ++x) {
      Value y = x;
      for (unsigned k = 0; k < p; ++k) y = s[y];
      ok = y == x;
    }
    if (ok) out.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

void guard_search(const SweepBounds& b) {
  if (b.max_e == 0 || b.max_G == 0) {
    throw InputError("sweep bounds must be positive");
  }
  if (!is_prime(b.p)) {
    throw InputError("p must be prime");
  }
  const std::size_t n = std::max(b.max_e, b.max_G);
  if (n > kMaxCanonicalSize) {
    throw GuardError("carrier bound above " + std::to_string(kMaxCanonicalSize));
  }
  const std::size_t tables = ipow(n, (n - 1) * (n - 1));
  if (tables > b.max_candidates / std::max<std::size_t>(tables, 1)) {
    throw GuardError("sweep would examine " + std::to_string(tables) + "^2 > " +
                     std::to_string(b.max_candidates) + " table pairs");
  }
}

template <class Visit>
void for_each_base(const SweepBounds& b, Visit visit) {
  for (std::size_t ne = 1; ne <= b.max_e; ++ne) {
    const auto tables_e = unital_tables(ne);
    const auto sigmas = actions(ne, b.p);
    for (std::size_t ng = 1; ng <= b.max_G; ++ng) {
      const auto tables_g = unital_tables(ng);
      const auto rs = pointed_functions(ng, ne);
      const auto ts = pointed_functions(ne, ng);
      for (const auto& sigma : sigmas) {
        visit(ne, ng, sigma, tables_e, tables_g, rs, ts);
      }
    }
  }
}

}  // namespace

std::vector<InterchangePair> enumerate_interchanging_pairs(
    const SweepBounds& bounds, PowerReading reading) {
  guard_search(bounds);
  std::set<std::vector<Value>> seen;
  std::vector<InterchangePair> out;
  auto record = [&](const InterchangePair& raw) {
    InterchangePair c = canonical_form(raw);
    std::vector<Value> key;
    append_key(key, c.star, true);
    append_key(key, c.bullet, false);
    key.insert(key.begin(), {static_cast<Value>(c.star.base.size_e),
                             static_cast<Value>(c.star.base.size_G)});
    if (seen.insert(key).second) out.push_back(std::move(c));
  };
  for_each_base(bounds, [&](std::size_t ne, std::size_t ng, const FnTable& sigma,
                            const std::vector<Table>& tables_e,
                            const std::vector<Table>& tables_g,
                            const std::vector<FnTable>& rs,
                            const std::vector<FnTable>& ts) {
    // Stage 1: per-level pairs obeying equivariance and binary interchange.
    std::vector<const Table*> eq_e;
    for (const auto& t : tables_e) {
      if (equivariant_table(t, ne, sigma)) eq_e.push_back(&t);
    }
    std::vector<std::pair<const Table*, const Table*>> pe;
    for (const Table* a : eq_e)
      for (const Table* c : eq_e)
        if (interchanges(*a, *c, ne)) pe.emplace_back(a, c);
    std::vector<std::pair<const Table*, const Table*>> pg;
    for (const auto& a : tables_g)
      for (const auto& c : tables_g)
        if (interchanges(a, c, ng)) pg.emplace_back(&a, &c);
    // Stage 2: r and the two transfers.
    for (const auto& [se, be] : pe) {
      for (const auto& [sg, bg] : pg) {
        for (const auto& r : rs) {
          bool fixed = true;
          for (Value y : r) fixed = fixed && sigma[y] == y;
          if (!fixed || !is_hom(r, *sg, ng, *se, ne) ||
              !is_hom(r, *bg, ng, *be, ne)) {
            continue;
          }
          CoefficientSystem base{bounds.p, ne, sigma, ng, r};
          std::vector<const FnTable*> t_star;
          std::vector<const FnTable*> t_bullet;
          for (const auto& t : ts) {
            CpUnitalMagma s{base, *se, 0, *sg, 0, t};
            CpUnitalMagma b{base, *be, 0, *bg, 0, t};
            if (validate_magma(s, reading)) t_star.push_back(&t);
            if (validate_magma(b, reading)) t_bullet.push_back(&t);
          }
          for (const FnTable* ta : t_star) {
            for (const FnTable* tb : t_bullet) {
              InterchangePair pair{CpUnitalMagma{base, *se, 0, *sg, 0, *ta},
                                   CpUnitalMagma{base, *be, 0, *bg, 0, *tb}};
              if (check_interchange(pair, reading)) record(pair);
            }
          }
        }
      }
    }
  });
  std::sort(out.begin(), out.end(),
            [](const InterchangePair& a, const InterchangePair& b) {
              std::vector<Value> ka{static_cast<Value>(a.star.base.size_e),
                                    static_cast<Value>(a.star.base.size_G)};
              std::vector<Value> kb{static_cast<Value>(b.star.base.size_e),
                                    static_cast<Value>(b.star.base.size_G)};
              append_key(ka, a.star, true);
              append_key(ka, a.bullet, false);
              append_key(kb, b.star, true);
              append_key(kb, b.bullet, false);
              return ka < kb;
            });
  return out;
}

std::vector<SemiMackeyFunctor> enumerate_semi_mackey(const SweepBounds& bounds) {
  guard_search(bounds);
  std::map<std::vector<Value>, SemiMackeyFunctor> found;
  for_each_base(bounds, [&](std::size_t ne, std::size_t ng, const FnTable& sigma,
                            const std::vector<Table>& tables_e,
                            const std::vector<Table>& tables_g,
                            const std::vector<FnTable>& rs,
                            const std::vector<FnTable>& ts) {
    for (const auto& me : tables_e) {
      if (!commutative_monoid(me, ne) || !equivariant_table(me, ne, sigma)) {
        continue;
      }
      for (const auto& mg : tables_g) {
        if (!commutative_monoid(mg, ng)) continue;
        for (const auto& r : rs) {
          bool fixed = true;
          for (Value y : r) fixed = fixed && sigma[y] == y;
          if (!fixed || !is_hom(r, mg, ng, me, ne)) continue;
          for (const auto& t : ts) {
            if (!is_hom(t, me, ne, mg, ng)) continue;
            bool ok = true;
            for (Value x = 0; x < ne && ok; ++x) {
              ok = t[sigma[x]] == t[x];
              // Direct double-coset formula.
              Value norm = x;
              Value gx = x;
              for (unsigned k = 1; k < bounds.p; ++k) {
                gx = sigma[gx];
                norm = me[norm * ne + gx];
              }
              ok = ok && r[t[x]] == norm;
            }
            if (!ok) continue;
            SemiMackeyFunctor sm{
                CpUnitalMagma{CoefficientSystem{bounds.p, ne, sigma, ng, r}, me,
                              0, mg, 0, t}};
            SemiMackeyFunctor c = canonical_form(sm);
            std::vector<Value> key{static_cast<Value>(ne), static_cast<Value>(ng)};
            append_key(key, c.structure, true);
            found.emplace(std::move(key), std::move(c));
          }
        }
      }
    }
  });
  std::vector<SemiMackeyFunctor> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

std::vector<MagmaMap> enumerate_homs(const CpUnitalMagma& m,
                                     const CpUnitalMagma& n) {
  const std::size_t ne = m.base.size_e;
  const std::size_t ng = m.base.size_G;
  const std::size_t te = n.base.size_e;
  const std::size_t tg = n.base.size_G;
  if (ipow(te, ne) * ipow(tg, ng) > 10'000'000) {
    throw GuardError("homomorphism search space too large");
  }
  std::vector<MagmaMap> out;
  MagmaMap f{FnTable(ne, 0), FnTable(ng, 0)};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ne + ng) {
      if (is_homomorphism(f, m, n)) out.push_back(f);
      return;
    }
    const bool at_e = i < ne;
    const std::size_t range = at_e ? te : tg;
    for (Value v = 0; v < range; ++v) {
      (at_e ? f.on_e[i] : f.on_G[i - ne]) = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<MagmaMap> enumerate_homs(const InterchangePair& m,
                                     const InterchangePair& n) {
  std::vector<MagmaMap> out;
  for (MagmaMap& f : enumerate_homs(m.star, n.star)) {
    if (is_homomorphism(f, m.bullet, n.bullet)) out.push_back(std::move(f));
  }
  return out;
}

SweepReport eh_sweep(const SweepBounds& bounds, PowerReading reading) {
  SweepReport rep;
  const auto pairs = enumerate_interchanging_pairs(bounds, reading);
  const auto functors = enumerate_semi_mackey(bounds);
  rep.pairs = pairs.size();
  rep.functors = functors.size();

  std::vector<SemiMackeyFunctor> images;
  for (const auto& pair : pairs) {
    try {
      images.push_back(eckmann_hilton(pair, reading));
    } catch (const TheoremViolation& e) {
      ++rep.violations;
      if (rep.first_violation.empty()) rep.first_violation = e.what();
    }
  }

  // Both directions of the bijection on isomorphism classes.
  bool bij = rep.violations == 0 && images.size() == functors.size();
  std::set<std::vector<Value>> from_pairs;
  for (const auto& sm : images) {
    const SemiMackeyFunctor c = canonical_form(sm);
    std::vector<Value> key;
    append_key(key, c.structure, true);
    key.insert(key.begin(), {static_cast<Value>(c.structure.base.size_e),
                             static_cast<Value>(c.structure.base.size_G)});
    bij = bij && from_pairs.insert(key).second;
  }
  for (std::size_t i = 0; bij && i < pairs.size(); ++i) {
    bij = pair_of_semi_mackey(images[i]) == pairs[i];
  }
  for (const auto& sm : functors) {
    if (!bij) break;
    try {
      const InterchangePair pair = pair_of_semi_mackey(sm);
      bij = check_interchange(pair, reading).valid &&
            eckmann_hilton(pair, reading) == sm;
      std::vector<Value> key;
      append_key(key, sm.structure, true);
      key.insert(key.begin(), {static_cast<Value>(sm.structure.base.size_e),
                               static_cast<Value>(sm.structure.base.size_G)});
      bij = bij && from_pairs.count(key) == 1;
    } catch (const Error&) {
      bij = false;
    }
  }
  rep.bijection = bij;

  bool homs = rep.violations == 0;
  for (std::size_t i = 0; homs && i < pairs.size(); ++i) {
    for (std::size_t j = 0; homs && j < pairs.size(); ++j) {
      homs = enumerate_homs(pairs[i], pairs[j]) ==
             enumerate_homs(images[i].structure, images[j].structure);
    }
  }
  rep.homs_match = homs;
  return rep;
}

}  // namespace ehkit
