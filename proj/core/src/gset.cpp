#include "ehkit/gset.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ehkit/error.hpp"

namespace ehkit {

namespace {

// Left coset representatives of u in v, identity first, then by least element
// of the coset. `which[x]` is the coset index of x for x in v.
struct CosetTable {
  std::vector<Elem> reps;
  std::vector<std::size_t> which;
};

CosetTable left_cosets(const Subgroup& v, const Subgroup& u) {
  const FiniteGroup& g = v.ambient();
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  CosetTable t;
  t.which.assign(g.order(), kNone);
  auto add = [&](Elem r) {
    const std::size_t i = t.reps.size();
    t.reps.push_back(r);
    for (Elem k : u.members()) {
      t.which[g.mul(r, k)] = i;
    }
  };
  add(g.identity());
  for (Elem x : v.members()) {
    if (t.which[x] == kNone) {
      add(x);
    }
  }
  return t;
}

// Right cosets u w of u in v, identity first.
CosetTable right_cosets(const Subgroup& v, const Subgroup& u) {
  const FiniteGroup& g = v.ambient();
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  CosetTable t;
  t.which.assign(g.order(), kNone);
  auto add = [&](Elem r) {
    const std::size_t i = t.reps.size();
    t.reps.push_back(r);
    for (Elem k : u.members()) {
      t.which[g.mul(k, r)] = i;
    }
  };
  add(g.identity());
  for (Elem x : v.members()) {
    if (t.which[x] == kNone) {
      add(x);
    }
  }
  return t;
}

void require_same_acting(const GSet& a, const GSet& b, const char* what) {
  if (!(a.acting() == b.acting()) || a.group() != b.group()) {
    throw InputError(std::string(what) + ": acting groups differ");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GSet

GSet::GSet(Subgroup acting, std::size_t size,
           const std::function<Point(Elem, Point)>& act)
    : acting_(std::move(acting)), size_(size) {
  const FiniteGroup& g = acting_.ambient();
  act_.assign(g.order() * size_, 0);
  for (Elem h : acting_.members()) {
    for (Point x = 0; x < size_; ++x) {
      const Point y = act(h, x);
      if (y >= size_) {
        throw InputError("action sends a point out of range");
      }
      act_[h * size_ + x] = y;
    }
  }
  for (Point x = 0; x < size_; ++x) {
    if (this->act(g.identity(), x) != x) {
      throw InputError("identity does not act trivially on point " +
                       std::to_string(x));
    }
  }
  for (Elem a : acting_.members()) {
    for (Elem b : acting_.members()) {
      for (Point x = 0; x < size_; ++x) {
        if (this->act(g.mul(a, b), x) != this->act(a, this->act(b, x))) {
          std::ostringstream os;
          os << "action is not compatible with multiplication at (" << a << ","
             << b << "," << x << ")";
          throw InputError(os.str());
        }
      }
    }
  }
}

GSet GSet::empty(const Subgroup& acting) {
  return GSet(acting, 0, [](Elem, Point x) { return x; });
}

GSet GSet::point(const Subgroup& acting) {
  return GSet(acting, 1, [](Elem, Point) { return Point{0}; });
}

GSet GSet::cosets(const Subgroup& acting, const Subgroup& k) {
  if (!k.is_subgroup_of(acting)) {
    throw InputError("coset set: " + k.to_string() + " is not a subgroup of " +
                     acting.to_string());
  }
  const CosetTable t = left_cosets(acting, k);
  const FiniteGroup& g = acting.ambient();
  return GSet(acting, t.reps.size(), [&](Elem h, Point x) {
    return static_cast<Point>(t.which[g.mul(h, t.reps[x])]);
  });
}

GSet GSet::from_orbits(const Subgroup& acting,
                       const std::vector<Subgroup>& stabilizers) {
  GSet out = empty(acting);
  for (const Subgroup& k : stabilizers) {
    out = coproduct(out, cosets(acting, k));
  }
  return out;
}

Subgroup GSet::stabilizer(Point x) const {
  std::vector<Elem> members;
  for (Elem h : acting_.members()) {
    if (act(h, x) == x) {
      members.push_back(h);
    }
  }
  return Subgroup(acting_.group(), members);
}

std::vector<std::vector<Point>> GSet::orbits() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(size_, false);
  for (Point x = 0; x < size_; ++x) {
    if (seen[x]) {
      continue;
    }
    std::vector<Point> orbit;
    for (Elem h : acting_.members()) {
      const Point y = act(h, x);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

// ---------------------------------------------------------------------------
// GSetMap

GSetMap::GSetMap(GSet src, GSet dst, std::vector<Point> on_points)
    : src_(std::move(src)), dst_(std::move(dst)),
      on_points_(std::move(on_points)) {
  require_same_acting(src_, dst_, "map");
  if (on_points_.size() != src_.size()) {
    throw InputError("map has wrong number of images");
  }
  for (Point y : on_points_) {
    if (y >= dst_.size()) {
      throw InputError("map image out of range");
    }
  }
  for (Elem h : src_.acting().members()) {
    for (Point x = 0; x < src_.size(); ++x) {
      if (on_points_[src_.act(h, x)] != dst_.act(h, on_points_[x])) {
        std::ostringstream os;
        os << "map is not equivariant at (g=" << h << ", x=" << x << ")";
        throw InputError(os.str());
      }
    }
  }
}

GSetMap GSetMap::identity(const GSet& s) {
  std::vector<Point> id(s.size());
  for (Point x = 0; x < s.size(); ++x) {
    id[x] = x;
  }
  return GSetMap(s, s, std::move(id));
}

GSetMap compose(const GSetMap& first, const GSetMap& second) {
  if (!(first.dst() == second.src())) {
    throw InputError("compose: codomain of first map is not domain of second");
  }
  std::vector<Point> pts(first.src().size());
  for (Point x = 0; x < pts.size(); ++x) {
    pts[x] = second(first(x));
  }
  return GSetMap(first.src(), second.dst(), std::move(pts));
}

// ---------------------------------------------------------------------------

std::vector<OrbitCount> orbit_decompose(const GSet& s) {
  std::vector<OrbitCount> out;
  for (const auto& orbit : s.orbits()) {
    Subgroup rep = class_representative(s.acting(), s.stabilizer(orbit.front()));
    auto it = std::find_if(out.begin(), out.end(), [&](const OrbitCount& o) {
      return o.stabilizer == rep;
    });
    if (it == out.end()) {
      out.push_back({std::move(rep), 1});
    } else {
      ++it->multiplicity;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const OrbitCount& a, const OrbitCount& b) {
              return a.stabilizer < b.stabilizer;
            });
  return out;
}

GSet rebuild(const Subgroup& acting, const std::vector<OrbitCount>& orbits) {
  std::vector<Subgroup> stabs;
  for (const auto& o : orbits) {
    for (std::size_t i = 0; i < o.multiplicity; ++i) {
      stabs.push_back(o.stabilizer);
    }
  }
  return GSet::from_orbits(acting, stabs);
}

bool isomorphic(const GSet& a, const GSet& b) {
  return a.acting() == b.acting() && a.size() == b.size() &&
         orbit_decompose(a) == orbit_decompose(b);
}

GSet coproduct(const GSet& a, const GSet& b) {
  require_same_acting(a, b, "coproduct");
  const auto n = static_cast<Point>(a.size());
  return GSet(a.acting(), a.size() + b.size(), [&](Elem h, Point x) {
    return x < n ? a.act(h, x) : n + b.act(h, x - n);
  });
}

GSet product(const GSet& a, const GSet& b) {
  require_same_acting(a, b, "product");
  const auto m = static_cast<Point>(b.size());
  return GSet(a.acting(), a.size() * b.size(), [&](Elem h, Point x) {
    return a.act(h, x / m) * m + b.act(h, x % m);
  });
}

GSet induce(const Subgroup& v, const GSet& s) {
  const Subgroup& u = s.acting();
  if (!u.is_subgroup_of(v)) {
    throw InputError("induce: " + u.to_string() + " is not a subgroup of " +
                     v.to_string());
  }
  const CosetTable t = left_cosets(v, u);
  const FiniteGroup& g = v.ambient();
  const auto n = static_cast<Point>(s.size());
  return GSet(v, t.reps.size() * s.size(), [&](Elem h, Point p) {
    const Point i = p / n;
    const Point x = p % n;
    const Elem hr = g.mul(h, t.reps[i]);
    const std::size_t j = t.which[hr];
    const Elem k = g.mul(g.inverse(t.reps[j]), hr);
    return static_cast<Point>(j * n + s.act(k, x));
  });
}

GSetMap induce_structure_map(const Subgroup& v, const GSet& s) {
  GSet src = induce(v, s);
  GSet dst = induce(v, GSet::point(s.acting()));
  std::vector<Point> pts(src.size());
  for (Point p = 0; p < pts.size(); ++p) {
    pts[p] = static_cast<Point>(p / s.size());
  }
  return GSetMap(std::move(src), std::move(dst), std::move(pts));
}

GSet restrict(const Subgroup& k, const GSet& s) {
  if (!k.is_subgroup_of(s.acting())) {
    throw InputError("restrict: " + k.to_string() + " is not a subgroup of " +
                     s.acting().to_string());
  }
  return GSet(k, s.size(), [&](Elem h, Point x) { return s.act(h, x); });
}

GSet coinduce(const Subgroup& v, const GSet& s, std::size_t max_points) {
  const Subgroup& u = s.acting();
  if (!u.is_subgroup_of(v)) {
    throw InputError("coinduce: " + u.to_string() + " is not a subgroup of " +
                     v.to_string());
  }
  const CosetTable t = right_cosets(v, u);
  const FiniteGroup& g = v.ambient();
  const std::size_t m = t.reps.size();
  const std::size_t base = s.size();
  std::size_t total = 1;
  for (std::size_t j = 0; j < m; ++j) {
    if (base != 0 && total > max_points / base) {
      throw GuardError("coinduction would exceed " +
                       std::to_string(max_points) + " points");
    }
    total *= base;
  }
  if (total > max_points) {
    throw GuardError("coinduction would exceed " + std::to_string(max_points) +
                     " points");
  }
  return GSet(v, total, [&](Elem h, Point p) {
    std::vector<Point> a(m);
    for (std::size_t j = 0; j < m; ++j) {
      a[j] = static_cast<Point>(p % base);
      p /= static_cast<Point>(base);
    }
    std::size_t out = 0;
    std::size_t weight = 1;
    for (std::size_t j = 0; j < m; ++j) {
      const Elem wg = g.mul(t.reps[j], h);
      const std::size_t k = t.which[wg];
      const Elem x = g.mul(wg, g.inverse(t.reps[k]));
      out += weight * s.act(x, a[k]);
      weight *= base;
    }
    return static_cast<Point>(out);
  });
}

GSet conjugate(const GSet& s, Elem g) {
  const FiniteGroup& grp = s.acting().ambient();
  const Subgroup target = s.acting().conjugate(g);
  const Elem gi = grp.inverse(g);
  return GSet(target, s.size(), [&](Elem h, Point x) {
    return s.act(grp.conjugate(gi, h), x);
  });
}

Pullback pullback(const GSetMap& f, const GSetMap& g) {
  if (!(f.dst() == g.dst())) {
    throw InputError("pullback: maps do not share a codomain");
  }
  std::vector<std::pair<Point, Point>> pairs;
  for (Point t = 0; t < f.src().size(); ++t) {
    for (Point u = 0; u < g.src().size(); ++u) {
      if (f(t) == g(u)) {
        pairs.emplace_back(t, u);
      }
    }
  }
  const GSet& ts = f.src();
  const GSet& us = g.src();
  GSet apex(f.src().acting(), pairs.size(), [&](Elem h, Point p) {
    const std::pair<Point, Point> img{ts.act(h, pairs[p].first),
                                      us.act(h, pairs[p].second)};
    return static_cast<Point>(
        std::lower_bound(pairs.begin(), pairs.end(), img) - pairs.begin());
  });
  std::vector<Point> left(pairs.size());
  std::vector<Point> right(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    left[p] = pairs[p].first;
    right[p] = pairs[p].second;
  }
  GSetMap to_left(apex, ts, std::move(left));
  GSetMap to_right(apex, us, std::move(right));
  return {std::move(apex), std::move(to_left), std::move(to_right)};
}

std::vector<Point> fixed_points(const GSet& s, const Subgroup& h) {
  if (!h.is_subgroup_of(s.acting())) {
    throw InputError("fixed_points: subgroup does not act");
  }
  std::vector<Point> out;
  for (Point x = 0; x < s.size(); ++x) {
    bool fixed = true;
    for (Elem g : h.members()) {
      if (s.act(g, x) != x) {
        fixed = false;
        break;
      }
    }
    if (fixed) {
      out.push_back(x);
    }
  }
  return out;
}

std::vector<Elem> double_cosets(const Subgroup& k, const Subgroup& h,
                                const Subgroup& g) {
  if (!k.is_subgroup_of(g) || !h.is_subgroup_of(g)) {
    throw InputError("double_cosets: subgroups must lie in the ambient group");
  }
  const FiniteGroup& grp = g.ambient();
  std::vector<bool> seen(grp.order(), false);
  std::vector<Elem> reps;
  for (Elem x : g.members()) {
    if (seen[x]) {
      continue;
    }
    reps.push_back(x);
    for (Elem a : k.members()) {
      for (Elem b : h.members()) {
        seen[grp.mul(grp.mul(a, x), b)] = true;
      }
    }
  }
  return reps;
}

DistinguishedPoint distinguished_fixed_point(const Subgroup& u,
                                             const Subgroup& v) {
  if (!u.is_subgroup_of(v)) {
    throw InputError("distinguished_fixed_point: u is not a subgroup of v");
  }
  return {restrict(u, induce(v, GSet::point(u))), 0};
}

std::size_t count_homs(const GSet& s, const GSet& t) {
  require_same_acting(s, t, "count_homs");
  std::size_t total = 1;
  for (const auto& orbit : s.orbits()) {
    total *= fixed_points(t, s.stabilizer(orbit.front())).size();
  }
  return total;
}

std::vector<GSetMap> enumerate_homs(const GSet& s, const GSet& t) {
  require_same_acting(s, t, "enumerate_homs");
  const auto orbits = s.orbits();
  std::vector<std::vector<Point>> choices;
  for (const auto& orbit : orbits) {
    choices.push_back(fixed_points(t, s.stabilizer(orbit.front())));
    if (choices.back().empty()) {
      return {};
    }
  }
  std::vector<GSetMap> out;
  std::vector<std::size_t> pick(orbits.size(), 0);
  while (true) {
    std::vector<Point> img(s.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      const Point rep = orbits[i].front();
      const Point y = choices[i][pick[i]];
      for (Elem g : s.acting().members()) {
        img[s.act(g, rep)] = t.act(g, y);
      }
    }
    out.emplace_back(s, t, std::move(img));
    std::size_t i = orbits.size();
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) {
        break;
      }
      pick[i] = 0;
      if (i == 0) {
        return out;
      }
    }
    if (orbits.empty()) {
      return out;
    }
  }
}

// ---------------------------------------------------------------------------
// Spans

Span::Span(GSetMap left, GSetMap right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!(left_.src() == right_.src())) {
    throw InputError("span legs do not share an apex");
  }
}

Span Span::identity(const GSet& x) {
  return Span(GSetMap::identity(x), GSetMap::identity(x));
}

Span compose_spans(const Span& first, const Span& second) {
  if (!(first.target() == second.source())) {
    throw InputError("compose_spans: middle objects differ");
  }
  Pullback p = pullback(first.right(), second.left());
  return Span(compose(p.to_left, first.left()),
              compose(p.to_right, second.right()));
}

bool spans_isomorphic(const Span& a, const Span& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()) ||
      !isomorphic(a.apex(), b.apex())) {
    return false;
  }
  for (const GSetMap& phi : enumerate_homs(a.apex(), b.apex())) {
    std::vector<bool> hit(b.apex().size(), false);
    bool ok = true;
    for (Point x = 0; x < a.apex().size() && ok; ++x) {
      const Point y = phi(x);
      ok = !hit[y] && a.left()(x) == b.left()(y) &&
           a.right()(x) == b.right()(y);
      hit[y] = true;
    }
    if (ok) {
      return true;
    }
  }
  return false;
}

}  // namespace ehkit
