#include "ehkit/windex.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace ehkit {

namespace {

void sort_unique(std::vector<std::size_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Sub-G-set on an invariant subset of points; `points` ascending.
GSet sub_gset(const GSet& s, const std::vector<Point>& points) {
  std::vector<Point> where(s.size(), 0);
  for (Point i = 0; i < points.size(); ++i) {
    where[points[i]] = i;
  }
  return GSet(s.acting(), points.size(),
              [&](Elem g, Point x) { return where[s.act(g, points[x])]; });
}

// The orbit map G/K → d sending the base coset to z (z must be K-fixed).
GSetMap orbit_map(const GSet& gk, const GSet& d, Point z) {
  const FiniteGroup& g = gk.acting().ambient();
  std::vector<Point> img(gk.size(), 0);
  for (Elem x = 0; x < g.order(); ++x) {
    img[gk.act(x, 0)] = d.act(x, z);
  }
  return GSetMap(gk, d, std::move(img));
}

}  // namespace

const char* to_string(Filter f) {
  switch (f) {
    case Filter::all:
      return "all";
    case Filter::unital:
      return "unital";
    case Filter::almost_unital:
      return "almost_unital";
  }
  return "all";
}

Filter parse_filter(const std::string& s) {
  if (s == "all") return Filter::all;
  if (s == "unital") return Filter::unital;
  if (s == "almost_unital" || s == "almost-unital") return Filter::almost_unital;
  throw InputError("unknown filter '" + s + "'");
}

// ---------------------------------------------------------------------------
// Level

std::size_t Level::classify(const Subgroup& m) const {
  auto it = class_of_mask.find(m.mask());
  if (it == class_of_mask.end()) {
    throw InputError("subgroup " + m.to_string() + " is not contained in " +
                     rep.to_string());
  }
  return it->second;
}

std::size_t Level::fiber_size(const OrbitVector& v) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    n += v[j] * sub_index[j];
  }
  return n;
}

// ---------------------------------------------------------------------------
// IndexingContext

std::shared_ptr<const IndexingContext> IndexingContext::create(
    GroupPtr g, std::size_t cutoff) {
  if (cutoff < g->order()) {
    throw InputError("cutoff " + std::to_string(cutoff) +
                     " is below the group order");
  }
  return std::shared_ptr<const IndexingContext>(
      new IndexingContext(std::move(g), cutoff));
}

IndexingContext::IndexingContext(GroupPtr g, std::size_t cutoff)
    : group_(std::move(g)),
      cutoff_(cutoff),
      lattice_(std::make_shared<const SubgroupLattice>(group_)) {
  const FiniteGroup& grp = *group_;
  level_of_node_.assign(lattice_->size(), 0);
  for (std::size_t c = 0; c < lattice_->class_count(); ++c) {
    const std::size_t node = lattice_->class_representative(c);
    Level lv{node, lattice_->node(node), 0, {}, {}, 0, {}, {}};
    lv.index = grp.order() / lv.rep.order();
    for (const Subgroup& k : subgroups_of(lv.rep)) {
      Subgroup r = class_representative(lv.rep, k);
      if (r == k) {
        lv.sub.push_back(k);
        lv.sub_index.push_back(lv.rep.order() / k.order());
      }
    }
    for (const Subgroup& k : subgroups_of(lv.rep)) {
      const Subgroup r = class_representative(lv.rep, k);
      const auto pos = std::find(lv.sub.begin(), lv.sub.end(), r) - lv.sub.begin();
      lv.class_of_mask[k.mask()] = static_cast<std::size_t>(pos);
    }
    lv.point_class = lv.classify(lv.rep);
    for (Elem n = 0; n < grp.order(); ++n) {
      if (!(lv.rep.conjugate(n) == lv.rep)) {
        continue;
      }
      std::vector<std::size_t> perm(lv.sub.size());
      for (std::size_t j = 0; j < lv.sub.size(); ++j) {
        perm[j] = lv.classify(lv.sub[j].conjugate(n));
      }
      if (std::find(lv.twists.begin(), lv.twists.end(), perm) ==
          lv.twists.end()) {
        lv.twists.push_back(std::move(perm));
      }
    }
    for (std::size_t node : lattice_->class_members(c)) {
      level_of_node_[node] = c;
    }
    levels_.push_back(std::move(lv));
  }
  for (const Level& lv : levels_) {
    std::vector<std::size_t> slots;
    for (const Subgroup& m : lv.sub) {
      slots.push_back(level_of_node_[lattice_->index_of(m)]);
    }
    slot_level_.push_back(std::move(slots));
  }

  // Enumerate canonical fibers level by level.
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const Level& lv = levels_[l];
    const std::size_t budget = cutoff_ / lv.index;
    OrbitVector v(lv.sub.size(), 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j,
                                                            std::size_t left) {
      if (j == v.size()) {
        if (canonical(l, v) == v) {
          elements_.push_back({l, v});
        }
        return;
      }
      for (std::size_t k = 0; k * lv.sub_index[j] <= left; ++k) {
        v[j] = static_cast<std::uint32_t>(k);
        rec(j + 1, left - k * lv.sub_index[j]);
      }
      v[j] = 0;
    };
    rec(0, budget);
  }
  std::sort(elements_.begin(), elements_.end(),
            [&](const Elementary& a, const Elementary& b) {
              if (a.level != b.level) return a.level < b.level;
              const auto sa = levels_[a.level].fiber_size(a.fiber);
              const auto sb = levels_[b.level].fiber_size(b.fiber);
              if (sa != sb) return sa < sb;
              return a.fiber < b.fiber;
            });
  by_level_.assign(levels_.size(), {});
  position_in_level_.assign(elements_.size(), 0);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index_[elements_[i]] = i;
    position_in_level_[i] = by_level_[elements_[i].level].size();
    by_level_[elements_[i].level].push_back(i);
  }
}

std::size_t IndexingContext::position_in_level(std::size_t i) const {
  return position_in_level_.at(i);
}

std::size_t IndexingContext::source_size(std::size_t i) const {
  const Elementary& e = elements_.at(i);
  return levels_[e.level].index * levels_[e.level].fiber_size(e.fiber);
}

std::size_t IndexingContext::target_size(std::size_t i) const {
  return levels_[elements_.at(i).level].index;
}

OrbitVector IndexingContext::canonical(std::size_t level,
                                       const OrbitVector& v) const {
  const Level& lv = levels_.at(level);
  OrbitVector best = v;
  for (const auto& perm : lv.twists) {
    OrbitVector w(v.size(), 0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      w[perm[j]] = v[j];
    }
    if (w < best) {
      best = std::move(w);
    }
  }
  return best;
}

std::optional<std::size_t> IndexingContext::find(std::size_t level,
                                                 const OrbitVector& v) const {
  const Level& lv = levels_.at(level);
  if (lv.index * lv.fiber_size(v) > cutoff_) {
    return std::nullopt;
  }
  auto it = index_.find(Elementary{level, canonical(level, v)});
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t IndexingContext::unit(std::size_t level) const {
  OrbitVector v(levels_.at(level).sub.size(), 0);
  v[levels_[level].point_class] = 1;
  return *find(level, v);
}

std::size_t IndexingContext::empty(std::size_t level) const {
  return *find(level, OrbitVector(levels_.at(level).sub.size(), 0));
}

GSetMap IndexingContext::concrete(std::size_t i) const {
  const Elementary& e = elements_.at(i);
  const Level& lv = levels_[e.level];
  std::vector<Subgroup> stabs;
  for (std::size_t j = 0; j < e.fiber.size(); ++j) {
    for (std::uint32_t k = 0; k < e.fiber[j]; ++k) {
      stabs.push_back(lv.sub[j]);
    }
  }
  return induce_structure_map(Subgroup::whole(group_),
                              GSet::from_orbits(lv.rep, stabs));
}

std::size_t IndexingContext::classify_fiber(const GSetMap& f, Point base) const {
  const FiniteGroup& grp = *group_;
  const GSet& src = f.src();
  const Subgroup k = f.dst().stabilizer(base);
  const std::size_t l = level_of_node_[lattice_->index_of(k)];
  const Level& lv = levels_[l];
  Elem a = 0;
  for (Elem x = 0; x < grp.order(); ++x) {
    if (k.conjugate(x) == lv.rep) {
      a = x;
      break;
    }
  }
  OrbitVector counts(lv.sub.size(), 0);
  std::vector<bool> seen(src.size(), false);
  std::size_t fiber = 0;
  for (Point t = 0; t < src.size(); ++t) {
    if (f(t) != base || seen[t]) {
      continue;
    }
    for (Elem h : k.members()) {
      const Point u = src.act(h, t);
      if (!seen[u]) {
        seen[u] = true;
        ++fiber;
      }
    }
    counts[lv.classify(src.stabilizer(t).conjugate(a))] += 1;
  }
  if (lv.index * fiber > cutoff_) {
    throw CutoffOverflow("map component with " + std::to_string(lv.index * fiber) +
                         " source points exceeds cutoff " +
                         std::to_string(cutoff_));
  }
  return *find(l, counts);
}

std::vector<std::size_t> IndexingContext::decompose(const GSetMap& f) const {
  if (!(f.src().acting() == Subgroup::whole(group_))) {
    throw InputError("decompose: map is not a map of G-sets");
  }
  if (f.src().size() > cutoff_ || f.dst().size() > cutoff_) {
    throw CutoffOverflow("map with " + std::to_string(f.src().size()) + " → " +
                         std::to_string(f.dst().size()) +
                         " points exceeds cutoff " + std::to_string(cutoff_));
  }
  std::vector<std::size_t> out;
  for (const auto& orbit : f.dst().orbits()) {
    out.push_back(classify_fiber(f, orbit.front()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string IndexingContext::describe(std::size_t i) const {
  const Elementary& e = elements_.at(i);
  const Level& lv = levels_[e.level];
  std::ostringstream os;
  os << "H=" << lv.rep.to_string() << " F=";
  bool first = true;
  for (std::size_t j = 0; j < e.fiber.size(); ++j) {
    if (e.fiber[j] == 0) {
      continue;
    }
    os << (first ? "" : "+") << e.fiber[j] << "*[H/" << lv.sub[j].to_string()
       << "]";
    first = false;
  }
  if (first) {
    os << "empty";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Concrete tables

void IndexingContext::build_tables() const {
  const FiniteGroup& grp = *group_;
  const Subgroup whole = Subgroup::whole(group_);
  const std::size_t n = elements_.size();
  pull_.assign(n, {});
  subst_.assign(n, {});
  slots_at_level_.assign(levels_.size(), {});

  std::vector<GSetMap> maps;
  maps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    maps.push_back(concrete(i));
  }
  std::vector<GSet> orbit_sets;
  for (const Level& lv : levels_) {
    orbit_sets.push_back(induce(whole, GSet::point(lv.rep)));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Elementary& e = elements_[i];
    const Level& lv = levels_[e.level];
    const GSetMap& f = maps[i];
    const std::size_t fsize = lv.fiber_size(e.fiber);

    // Pullbacks along orbit maps G/K → G/H.
    for (std::size_t l2 = 0; l2 < levels_.size(); ++l2) {
      if (levels_[l2].index * fsize > cutoff_) {
        continue;
      }
      const GSet& gk = orbit_sets[l2];
      for (Point z : fixed_points(f.dst(), levels_[l2].rep)) {
        const Pullback p = pullback(f, orbit_map(gk, f.dst(), z));
        pull_[i].push_back(classify_fiber(p.to_right, 0));
      }
    }
    sort_unique(pull_[i]);

    // Substitutions into one orbit of the source.
    const GSet& ind = f.src();
    subst_[i].assign(lv.sub.size(), {});
    std::size_t offset = 0;
    for (std::size_t j = 0; j < lv.sub.size(); ++j) {
      const Point y0 = static_cast<Point>(offset);
      offset += e.fiber[j] * lv.sub_index[j];
      if (e.fiber[j] == 0) {
        continue;
      }
      const std::size_t sl = slot_level_[e.level][j];
      slots_at_level_[sl].emplace_back(i, j);
      const Subgroup& k = levels_[sl].rep;
      const Subgroup& m = lv.sub[j];

      std::vector<bool> in_orbit(ind.size(), false);
      for (Elem x = 0; x < grp.order(); ++x) {
        in_orbit[ind.act(x, y0)] = true;
      }
      // Points y of the orbit with Stab(y) = K, i.e. y = x·y0 with xMx⁻¹ = K.
      std::vector<Point> bases;
      for (Elem x = 0; x < grp.order(); ++x) {
        if (m.conjugate(x) == k) {
          bases.push_back(ind.act(x, y0));
        }
      }
      std::sort(bases.begin(), bases.end());
      bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
      std::vector<Point> rest_points;
      std::size_t orbit_size = 0;
      for (Point x = 0; x < ind.size(); ++x) {
        if (in_orbit[x]) {
          ++orbit_size;
        } else {
          rest_points.push_back(x);
        }
      }
      const GSet rest = sub_gset(ind, rest_points);

      const auto& targets = by_level_[sl];
      subst_[i][j].assign(targets.size(), {});
      for (std::size_t pos = 0; pos < targets.size(); ++pos) {
        const std::size_t t = targets[pos];
        if (ind.size() - orbit_size + source_size(t) > cutoff_) {
          continue;
        }
        const GSetMap& ft = maps[t];
        const GSet src = coproduct(ft.src(), rest);
        for (Point y : bases) {
          const GSetMap psi = orbit_map(ft.dst(), ind, y);
          std::vector<Point> img(src.size());
          for (Point p = 0; p < ft.src().size(); ++p) {
            img[p] = psi(ft(p));
          }
          for (Point q = 0; q < rest_points.size(); ++q) {
            img[ft.src().size() + q] = rest_points[q];
          }
          const GSetMap inner(src, ind, std::move(img));
          subst_[i][j][pos].push_back(classify_fiber(compose(inner, f), 0));
        }
        sort_unique(subst_[i][j][pos]);
      }
    }
  }
}

const std::vector<std::size_t>& IndexingContext::pullbacks(std::size_t i) const {
  std::call_once(tables_once_, [this] { build_tables(); });
  return pull_.at(i);
}

std::vector<std::size_t> IndexingContext::substitutions(std::size_t g,
                                                        std::size_t slot,
                                                        std::size_t t) const {
  std::call_once(tables_once_, [this] { build_tables(); });
  const Elementary& e = elements_.at(g);
  if (slot >= e.fiber.size() || e.fiber[slot] == 0) {
    return {};
  }
  if (elements_.at(t).level != slot_level_[e.level][slot]) {
    throw InputError("substitution: fiber lives at the wrong level");
  }
  return subst_[g][slot][position_in_level_[t]];
}

// ---------------------------------------------------------------------------
// Orbit arithmetic

std::vector<std::size_t> IndexingContext::restrictions_arith(
    std::size_t i) const {
  const FiniteGroup& grp = *group_;
  const Subgroup whole = Subgroup::whole(group_);
  const Elementary& e = elements_.at(i);
  const Level& lv = levels_[e.level];
  const std::size_t fsize = lv.fiber_size(e.fiber);
  std::vector<std::size_t> out;
  for (std::size_t l2 = 0; l2 < levels_.size(); ++l2) {
    const Level& lk = levels_[l2];
    if (lk.index * fsize > cutoff_) {
      continue;
    }
    const Subgroup& k = lk.rep;
    for (Elem a = 0; a < grp.order(); ++a) {
      const Subgroup h2 = lv.rep.conjugate(a);
      if (!k.is_subgroup_of(h2)) {
        continue;
      }
      OrbitVector counts(lk.sub.size(), 0);
      for (std::size_t j = 0; j < e.fiber.size(); ++j) {
        if (e.fiber[j] == 0) {
          continue;
        }
        const Subgroup m2 = lv.sub[j].conjugate(a);
        // Res_K (h2/m2) = sum over x in K\h2/m2 of K/(K ∩ x m2 x^-1).
        for (Elem x : double_cosets(k, m2, h2)) {
          counts[lk.classify(k.intersect(m2.conjugate(x)))] += e.fiber[j];
        }
      }
      if (auto r = find(l2, counts)) {
        out.push_back(*r);
      }
    }
  }
  sort_unique(out);
  return out;
}

std::vector<std::size_t> IndexingContext::substitutions_arith(
    std::size_t g, std::size_t slot, std::size_t t) const {
  const FiniteGroup& grp = *group_;
  const Elementary& e = elements_.at(g);
  const Level& lv = levels_[e.level];
  if (slot >= e.fiber.size() || e.fiber[slot] == 0) {
    return {};
  }
  const Elementary& te = elements_.at(t);
  const std::size_t sl = slot_level_[e.level][slot];
  if (te.level != sl) {
    throw InputError("substitution: fiber lives at the wrong level");
  }
  const Level& lk = levels_[sl];
  const Subgroup& m = lv.sub[slot];
  std::vector<std::size_t> out;
  for (Elem a = 0; a < grp.order(); ++a) {
    if (!(lk.rep.conjugate(a) == m)) {
      continue;
    }
    OrbitVector counts = e.fiber;
    counts[slot] -= 1;
    for (std::size_t i = 0; i < te.fiber.size(); ++i) {
      if (te.fiber[i] != 0) {
        // Ind_M^H (M/N) = H/N after transporting N from K to M.
        counts[lv.classify(lk.sub[i].conjugate(a))] += te.fiber[i];
      }
    }
    if (auto r = find(e.level, counts)) {
      out.push_back(*r);
    }
  }
  sort_unique(out);
  return out;
}

void IndexingContext::build_arith() const {
  const std::size_t n = elements_.size();
  arith_pull_.assign(n, {});
  arith_subst_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    arith_pull_[i] = restrictions_arith(i);
    const Elementary& e = elements_[i];
    arith_subst_[i].assign(e.fiber.size(), {});
    for (std::size_t j = 0; j < e.fiber.size(); ++j) {
      if (e.fiber[j] == 0) {
        continue;
      }
      const auto& targets = by_level_[slot_level_[e.level][j]];
      arith_subst_[i][j].reserve(targets.size());
      for (std::size_t t : targets) {
        arith_subst_[i][j].push_back(substitutions_arith(i, j, t));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Closures

ClassSet IndexingContext::close_category(const ClassSet& seed,
                                         Filter filter) const {
  std::call_once(tables_once_, [this] { build_tables(); });
  ClassSet x(size());
  std::deque<std::size_t> queue;
  auto add = [&](std::size_t i) {
    if (x.set(i)) {
      queue.push_back(i);
    }
  };
  for (std::size_t i : seed.indices()) {
    add(i);
  }
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    add(unit(l));
    if (filter == Filter::unital) {
      add(empty(l));
    }
  }
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    const Elementary& el = elements_[e];
    for (std::size_t r : pull_[e]) {
      add(r);
    }
    for (std::size_t j = 0; j < el.fiber.size(); ++j) {
      if (el.fiber[j] == 0) {
        continue;
      }
      const auto& targets = by_level_[slot_level_[el.level][j]];
      for (std::size_t pos = 0; pos < targets.size(); ++pos) {
        if (x.test(targets[pos])) {
          for (std::size_t r : subst_[e][j][pos]) {
            add(r);
          }
        }
      }
    }
    const std::size_t pos = position_in_level_[e];
    for (const auto& [g, j] : slots_at_level_[el.level]) {
      if (x.test(g)) {
        for (std::size_t r : subst_[g][j][pos]) {
          add(r);
        }
      }
    }
    if (filter == Filter::almost_unital && e != unit(el.level)) {
      add(empty(el.level));
    }
  }
  return x;
}

ClassSet IndexingContext::close_system(const ClassSet& seed,
                                       Filter filter) const {
  std::call_once(arith_once_, [this] { build_arith(); });
  ClassSet x = seed;
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    x.set(unit(l));
    if (filter == Filter::unital) {
      x.set(empty(l));
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e : x.indices()) {
      const Elementary& el = elements_[e];
      for (std::size_t r : arith_pull_[e]) {
        changed |= x.set(r);
      }
      bool nontrivial = e != unit(el.level);
      for (std::size_t j = 0; j < el.fiber.size(); ++j) {
        if (el.fiber[j] == 0) {
          continue;
        }
        const auto& targets = by_level_[slot_level_[el.level][j]];
        for (std::size_t pos = 0; pos < targets.size(); ++pos) {
          if (x.test(targets[pos])) {
            for (std::size_t r : arith_subst_[e][j][pos]) {
              changed |= x.set(r);
            }
          }
        }
      }
      if (filter == Filter::almost_unital && nontrivial) {
        changed |= x.set(empty(el.level));
      }
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Categories and systems

bool WeakIndexingCategory::contains(const GSetMap& f) const {
  for (std::size_t i : ctx_->decompose(f)) {
    if (!maps_.test(i)) {
      return false;
    }
  }
  return true;
}

std::string WeakIndexingCategory::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) { h = (h ^ v) * 1099511628211ULL; };
  for (std::size_t i : maps_.indices()) {
    const Elementary& e = ctx_->element(i);
    mix(e.level + 1);
    for (auto c : e.fiber) {
      mix(c + 0x9e37);
    }
    mix(0xffff);
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

bool WeakIndexingSystem::is_admissible(std::size_t level,
                                       const OrbitVector& v) const {
  auto i = ctx_->find(level, v);
  if (!i) {
    throw CutoffOverflow("H-set lies beyond the cutoff");
  }
  return admissible_.test(*i);
}

bool WeakIndexingSystem::is_admissible(const GSet& s) const {
  const IndexingContext& ctx = *ctx_;
  const std::size_t node = ctx.lattice().index_of(s.acting());
  const std::size_t l = ctx.level_of_node(node);
  const Level& lv = ctx.level(l);
  const FiniteGroup& grp = *ctx.group();
  for (Elem a = 0; a < grp.order(); ++a) {
    if (s.acting().conjugate(a) == lv.rep) {
      const GSet moved = conjugate(s, a);
      OrbitVector v(lv.sub.size(), 0);
      for (const auto& o : orbit_decompose(moved)) {
        v[lv.classify(o.stabilizer)] += static_cast<std::uint32_t>(o.multiplicity);
      }
      return is_admissible(l, v);
    }
  }
  throw InputError("acting subgroup is not conjugate to a level");
}

std::vector<OrbitVector> WeakIndexingSystem::admissible_at(
    std::size_t level) const {
  std::vector<OrbitVector> out;
  for (std::size_t i : ctx_->level_elements(level)) {
    if (admissible_.test(i)) {
      out.push_back(ctx_->element(i).fiber);
    }
  }
  return out;
}

TransferSystem::TransferSystem(std::shared_ptr<const SubgroupLattice> lattice,
                               std::vector<bool> rel)
    : lattice_(std::move(lattice)), rel_(std::move(rel)) {
  if (rel_.size() != lattice_->size() * lattice_->size()) {
    throw InputError("transfer system relation has the wrong size");
  }
}

bool TransferSystem::is_subset_of(const TransferSystem& o) const {
  for (std::size_t i = 0; i < rel_.size(); ++i) {
    if (rel_[i] && !o.rel_[i]) {
      return false;
    }
  }
  return true;
}

ValidityReport validate_transfer_system(const TransferSystem& t) {
  const SubgroupLattice& lat = t.lattice();
  const std::size_t n = lat.size();
  const FiniteGroup& grp = *lat.group();
  auto pair = [&](std::size_t a, std::size_t b) {
    return lat.node(a).to_string() + " -> " + lat.node(b).to_string();
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (!t.related(a, a)) {
      return ValidityReport::fail("reflexive", pair(a, a));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (t.related(a, b) && !lat.leq(a, b)) {
        return ValidityReport::fail("refines inclusion", pair(a, b));
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (t.related(a, b) && t.related(b, c) && !t.related(a, c)) {
          return ValidityReport::fail("transitive", pair(a, c));
        }
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!t.related(a, b)) {
        continue;
      }
      for (Elem g = 0; g < grp.order(); ++g) {
        const std::size_t ca = lat.conjugate_node(a, g);
        const std::size_t cb = lat.conjugate_node(b, g);
        if (!t.related(ca, cb)) {
          return ValidityReport::fail("conjugation", pair(ca, cb));
        }
      }
      for (std::size_t l = 0; l < n; ++l) {
        if (!lat.leq(l, b)) {
          continue;
        }
        const std::size_t m = lat.index_of(lat.node(a).intersect(lat.node(l)));
        if (!t.related(m, l)) {
          return ValidityReport::fail("restriction", pair(m, l));
        }
      }
    }
  }
  return ValidityReport::ok();
}

// ---------------------------------------------------------------------------
// Named objects

WeakIndexingCategory trivial_category(const ContextPtr& ctx) {
  return {ctx, ctx->close_category(ClassSet(ctx->size()), Filter::all)};
}

WeakIndexingCategory complete_category(const ContextPtr& ctx) {
  ClassSet all(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    all.set(i);
  }
  return {ctx, std::move(all)};
}

WeakIndexingCategory infinity_category(const ContextPtr& ctx) {
  ClassSet s(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    const Elementary& e = ctx->element(i);
    const std::size_t pc = ctx->level(e.level).point_class;
    bool folds = true;
    for (std::size_t j = 0; j < e.fiber.size(); ++j) {
      folds = folds && (j == pc || e.fiber[j] == 0);
    }
    if (folds) {
      s.set(i);
    }
  }
  return {ctx, std::move(s)};
}

WeakIndexingCategory zero_family_category(const ContextPtr& ctx,
                                          const std::set<std::size_t>& family) {
  const SubgroupLattice& lat = ctx->lattice();
  for (std::size_t l : family) {
    if (l >= ctx->levels().size()) {
      throw InputError("family level out of range");
    }
    for (std::size_t k = 0; k < lat.size(); ++k) {
      if (lat.leq(k, ctx->level(l).node) &&
          family.count(ctx->level_of_node(k)) == 0) {
        throw InputError("family is not closed under subconjugacy");
      }
    }
  }
  ClassSet s(ctx->size());
  for (std::size_t l = 0; l < ctx->levels().size(); ++l) {
    s.set(ctx->unit(l));
    if (family.count(l) != 0) {
      s.set(ctx->empty(l));
    }
  }
  return {ctx, std::move(s)};
}

// ---------------------------------------------------------------------------
// Validity

std::vector<MapClass> all_map_classes(const IndexingContext& ctx,
                                      std::size_t max_classes) {
  std::vector<MapClass> out;
  MapClass cur;
  const std::size_t c = ctx.cutoff();
  std::function<void(std::size_t, std::size_t, std::size_t)> rec =
      [&](std::size_t from, std::size_t src, std::size_t dst) {
        out.push_back(cur);
        if (out.size() > max_classes) {
          throw GuardError("more than " + std::to_string(max_classes) +
                           " map classes below the cutoff");
        }
        for (std::size_t i = from; i < ctx.size(); ++i) {
          const std::size_t s2 = src + ctx.source_size(i);
          const std::size_t d2 = dst + ctx.target_size(i);
          if (s2 > c || d2 > c) {
            continue;
          }
          cur.push_back(i);
          rec(i, s2, d2);
          cur.pop_back();
        }
      };
  rec(0, 0, 0);
  return out;
}

std::set<MapClass> explicit_maps(const WeakIndexingCategory& i,
                                 std::size_t max_classes) {
  std::set<MapClass> out;
  for (MapClass& m : all_map_classes(*i.context(), max_classes)) {
    if (std::all_of(m.begin(), m.end(),
                    [&](std::size_t e) { return i.contains_class(e); })) {
      out.insert(std::move(m));
    }
  }
  return out;
}

namespace {

std::string describe_class(const IndexingContext& ctx, const MapClass& m) {
  if (m.empty()) {
    return "(empty map)";
  }
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += (i ? " ⊔ " : "") + ctx.describe(m[i]);
  }
  return s;
}

// All elementary composites g ∘ f where f's components are assigned to the
// orbits of g's source. Computed by orbit arithmetic with every transport.
void composites(const IndexingContext& ctx, std::size_t g, const MapClass& f,
                std::vector<std::size_t>& out) {
  const Elementary& ge = ctx.element(g);
  const Level& lv = ctx.level(ge.level);
  // Slots with multiplicity.
  std::vector<std::size_t> slots;
  for (std::size_t j = 0; j < ge.fiber.size(); ++j) {
    for (std::uint32_t k = 0; k < ge.fiber[j]; ++k) {
      slots.push_back(j);
    }
  }
  if (slots.size() != f.size()) {
    return;
  }
  // Assign components to slots: permutations of f, deduplicated by the
  // resulting (slot, component) multiset.
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
  MapClass perm = f;
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<std::pair<std::size_t, std::size_t>> assign;
    bool ok = true;
    for (std::size_t k = 0; k < slots.size() && ok; ++k) {
      ok = ctx.element(perm[k]).level == ctx.slot_level(ge.level, slots[k]);
      assign.emplace_back(slots[k], perm[k]);
    }
    if (!ok) {
      continue;
    }
    std::sort(assign.begin(), assign.end());
    if (!seen.insert(assign).second) {
      continue;
    }
    // Each component contributes a set of possible H-orbit vectors.
    std::vector<OrbitVector> partial{OrbitVector(lv.sub.size(), 0)};
    const FiniteGroup& grp = *ctx.group();
    for (const auto& [slot, t] : assign) {
      const Elementary& te = ctx.element(t);
      const Level& lk = ctx.level(te.level);
      std::vector<OrbitVector> contribs;
      for (Elem a = 0; a < grp.order(); ++a) {
        if (!(lk.rep.conjugate(a) == lv.sub[slot])) {
          continue;
        }
        OrbitVector c(lv.sub.size(), 0);
        for (std::size_t i = 0; i < te.fiber.size(); ++i) {
          if (te.fiber[i] != 0) {
            c[lv.classify(lk.sub[i].conjugate(a))] += te.fiber[i];
          }
        }
        if (std::find(contribs.begin(), contribs.end(), c) == contribs.end()) {
          contribs.push_back(std::move(c));
        }
      }
      std::vector<OrbitVector> next;
      for (const auto& p : partial) {
        for (const auto& c : contribs) {
          OrbitVector s = p;
          for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] += c[i];
          }
          next.push_back(std::move(s));
        }
      }
      partial = std::move(next);
    }
    for (const auto& v : partial) {
      if (auto r = ctx.find(ge.level, v)) {
        out.push_back(*r);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

ValidityReport is_weak_indexing_category(const ContextPtr& ctxp,
                                         const std::set<MapClass>& candidate) {
  const IndexingContext& ctx = *ctxp;
  for (const MapClass& m : candidate) {
    std::size_t s = 0;
    std::size_t d = 0;
    for (std::size_t e : m) {
      if (e >= ctx.size()) {
        throw InputError("candidate map class refers to an unknown component");
      }
      s += ctx.source_size(e);
      d += ctx.target_size(e);
    }
    if (s > ctx.cutoff() || d > ctx.cutoff()) {
      throw CutoffOverflow("candidate map exceeds the cutoff");
    }
  }
  const auto universe = all_map_classes(ctx);
  auto is_unit = [&](std::size_t e) {
    return e == ctx.unit(ctx.element(e).level);
  };

  // Wide: every isomorphism.
  for (const MapClass& m : universe) {
    if (std::all_of(m.begin(), m.end(), is_unit) && candidate.count(m) == 0) {
      return ValidityReport::fail("wide (contains all isomorphisms)",
                                  describe_class(ctx, m));
    }
  }
  // Pullback along orbit maps into each orbit of the target.
  for (const MapClass& m : candidate) {
    for (std::size_t e : m) {
      for (std::size_t r : ctx.pullbacks(e)) {
        if (candidate.count(MapClass{r}) == 0) {
          return ValidityReport::fail(
              "pullback-stable",
              "pullback of " + describe_class(ctx, m) + " is " + ctx.describe(r));
        }
      }
    }
  }
  // Composition with an orbit target.
  for (const MapClass& g : candidate) {
    if (g.size() != 1) {
      continue;
    }
    for (const MapClass& f : candidate) {
      std::vector<std::size_t> out;
      composites(ctx, g.front(), f, out);
      for (std::size_t r : out) {
        if (candidate.count(MapClass{r}) == 0) {
          return ValidityReport::fail(
              "closed under composition",
              ctx.describe(g.front()) + " after " + describe_class(ctx, f) +
                  " is " + ctx.describe(r));
        }
      }
    }
  }
  // Segal: a coproduct lies in the candidate iff every summand does.
  for (const MapClass& m : universe) {
    const bool all_parts = std::all_of(m.begin(), m.end(), [&](std::size_t e) {
      return candidate.count(MapClass{e}) != 0;
    });
    if (all_parts != (candidate.count(m) != 0)) {
      return ValidityReport::fail("Segal condition", describe_class(ctx, m));
    }
  }
  return ValidityReport::ok();
}

ValidityReport is_weak_indexing_category(const WeakIndexingCategory& i) {
  const IndexingContext& ctx = *i.context();
  for (std::size_t l = 0; l < ctx.levels().size(); ++l) {
    if (!i.contains_class(ctx.unit(l))) {
      return ValidityReport::fail("wide (contains all isomorphisms)",
                                  ctx.describe(ctx.unit(l)));
    }
  }
  const auto members = i.maps().indices();
  for (std::size_t e : members) {
    for (std::size_t r : ctx.pullbacks(e)) {
      if (!i.contains_class(r)) {
        return ValidityReport::fail(
            "pullback-stable", "pullback of " + ctx.describe(e) + " is " +
                                   ctx.describe(r));
      }
    }
  }
  for (std::size_t g : members) {
    const Elementary& ge = ctx.element(g);
    for (std::size_t j = 0; j < ge.fiber.size(); ++j) {
      if (ge.fiber[j] == 0) {
        continue;
      }
      for (std::size_t t : ctx.level_elements(ctx.slot_level(ge.level, j))) {
        if (!i.contains_class(t)) {
          continue;
        }
        for (std::size_t r : ctx.substitutions(g, j, t)) {
          if (!i.contains_class(r)) {
            return ValidityReport::fail(
                "closed under composition",
                ctx.describe(g) + " after " + ctx.describe(t) + " is " +
                    ctx.describe(r));
          }
        }
      }
    }
  }
  return ValidityReport::ok();
}

ValidityReport is_weak_indexing_system(const WeakIndexingSystem& f) {
  const IndexingContext& ctx = *f.context();
  const ClassSet& x = f.admissible();
  for (std::size_t l = 0; l < ctx.levels().size(); ++l) {
    if (!x.test(ctx.unit(l))) {
      return ValidityReport::fail("contains *_H",
                                  ctx.level(l).rep.to_string());
    }
  }
  const auto members = x.indices();
  for (std::size_t e : members) {
    for (std::size_t r : ctx.restrictions_arith(e)) {
      if (!x.test(r)) {
        return ValidityReport::fail(
            "closed under restriction and conjugation",
            ctx.describe(e) + " restricts to " + ctx.describe(r));
      }
    }
  }
  for (std::size_t g : members) {
    const Elementary& ge = ctx.element(g);
    for (std::size_t j = 0; j < ge.fiber.size(); ++j) {
      if (ge.fiber[j] == 0) {
        continue;
      }
      for (std::size_t t : ctx.level_elements(ctx.slot_level(ge.level, j))) {
        if (!x.test(t)) {
          continue;
        }
        for (std::size_t r : ctx.substitutions_arith(g, j, t)) {
          if (!x.test(r)) {
            return ValidityReport::fail(
                "closed under self-indexed coproducts",
                ctx.describe(g) + " indexing " + ctx.describe(t) + " gives " +
                    ctx.describe(r));
          }
        }
      }
    }
  }
  return ValidityReport::ok();
}

// ---------------------------------------------------------------------------
// Conversions and lattice operations

WeakIndexingSystem system_of_category(const WeakIndexingCategory& i) {
  return {i.context(), i.maps()};
}

WeakIndexingCategory category_of_system(const WeakIndexingSystem& f) {
  ClassSet closed = f.context()->close_category(f.admissible(), Filter::all);
  if (!(closed == f.admissible())) {
    throw InputError(
        "not a weak indexing system: its category closure admits more sets");
  }
  return {f.context(), std::move(closed)};
}

std::set<std::size_t> unit_family(const WeakIndexingCategory& i) {
  const IndexingContext& ctx = *i.context();
  std::set<std::size_t> out;
  for (std::size_t l = 0; l < ctx.levels().size(); ++l) {
    if (i.contains_class(ctx.empty(l))) {
      out.insert(l);
    }
  }
  return out;
}

bool is_unital(const WeakIndexingCategory& i) {
  return unit_family(i).size() == i.context()->levels().size();
}

bool is_almost_unital(const WeakIndexingCategory& i) {
  const IndexingContext& ctx = *i.context();
  for (std::size_t l = 0; l < ctx.levels().size(); ++l) {
    bool nontrivial = false;
    for (std::size_t e : ctx.level_elements(l)) {
      nontrivial = nontrivial || (i.contains_class(e) && e != ctx.unit(l));
    }
    if (nontrivial && !i.contains_class(ctx.empty(l))) {
      return false;
    }
  }
  return true;
}

bool is_almost_unital_by_summands(const WeakIndexingCategory& i) {
  const IndexingContext& ctx = *i.context();
  for (std::size_t e : i.maps().indices()) {
    const Elementary& el = ctx.element(e);
    // Every sub-vector 0 < s <= fiber.
    OrbitVector s(el.fiber.size(), 0);
    std::function<bool(std::size_t, bool)> rec = [&](std::size_t j,
                                                     bool nonzero) -> bool {
      if (j == s.size()) {
        if (!nonzero) {
          return true;
        }
        auto r = ctx.find(el.level, s);
        return r && i.contains_class(*r);
      }
      for (std::uint32_t k = 0; k <= el.fiber[j]; ++k) {
        s[j] = k;
        if (!rec(j + 1, nonzero || k > 0)) {
          return false;
        }
      }
      s[j] = 0;
      return true;
    };
    if (!rec(0, false)) {
      return false;
    }
  }
  return true;
}

namespace {

void require_same_context(const WeakIndexingCategory& i,
                          const WeakIndexingCategory& j) {
  if (i.context() != j.context()) {
    throw InputError("categories live over different groups or cutoffs");
  }
}

}  // namespace

WeakIndexingCategory join(const WeakIndexingCategory& i,
                          const WeakIndexingCategory& j, Filter filter) {
  require_same_context(i, j);
  return {i.context(), i.context()->close_category(i.maps() | j.maps(), filter)};
}

WeakIndexingCategory meet(const WeakIndexingCategory& i,
                          const WeakIndexingCategory& j) {
  require_same_context(i, j);
  return {i.context(), i.maps() & j.maps()};
}

WeakIndexingCategory generate_windex(const ContextPtr& ctx,
                                     const std::vector<GSetMap>& generators,
                                     bool unital) {
  ClassSet seed(ctx->size());
  for (const GSetMap& f : generators) {
    for (std::size_t e : ctx->decompose(f)) {
      seed.set(e);
    }
  }
  return {ctx, ctx->close_category(seed, unital ? Filter::unital : Filter::all)};
}

WeakIndexingCategory truncate(const WeakIndexingCategory& i,
                              const ContextPtr& smaller) {
  const IndexingContext& big = *i.context();
  if (smaller->group() != big.group() || smaller->cutoff() > big.cutoff()) {
    throw InputError("truncate: target context must share the group and have "
                     "a smaller cutoff");
  }
  ClassSet s(smaller->size());
  for (std::size_t k = 0; k < smaller->size(); ++k) {
    const auto idx = big.find(smaller->element(k));
    if (idx && i.contains_class(*idx)) {
      s.set(k);
    }
  }
  return {smaller, std::move(s)};
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Breadth-first search over the closure lattice: every closed set is reached
// from the least one by adjoining one element at a time.
std::vector<ClassSet> enumerate_closed(
    std::size_t universe, const std::function<ClassSet(const ClassSet&)>& close,
    const EnumerationOptions& opts) {
  std::unordered_set<ClassSet, ClassSetHash> seen;
  std::vector<ClassSet> found;
  std::vector<ClassSet> frontier{close(ClassSet(universe))};
  seen.insert(frontier.front());
  found.push_back(frontier.front());
  const std::size_t jobs = std::max<std::size_t>(1, opts.jobs);
  while (!frontier.empty()) {
    std::vector<std::vector<ClassSet>> produced(frontier.size());
    auto work = [&](std::size_t first, std::size_t stride) {
      for (std::size_t f = first; f < frontier.size(); f += stride) {
        const ClassSet& x = frontier[f];
        std::unordered_set<ClassSet, ClassSetHash> local;
        for (std::size_t e = 0; e < universe; ++e) {
          if (x.test(e)) {
            continue;
          }
          ClassSet y = x;
          y.set(e);
          ClassSet z = close(y);
          if (local.insert(z).second) {
            produced[f].push_back(std::move(z));
          }
        }
      }
    };
    if (jobs == 1 || frontier.size() == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < jobs; ++t) {
        pool.emplace_back(work, t, jobs);
      }
      for (auto& th : pool) {
        th.join();
      }
    }
    std::vector<ClassSet> next;
    for (auto& batch : produced) {
      for (auto& z : batch) {
        if (seen.insert(z).second) {
          if (found.size() >= opts.max_objects) {
            throw GuardError("enumeration exceeded " +
                             std::to_string(opts.max_objects) + " objects");
          }
          found.push_back(z);
          next.push_back(std::move(z));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

Poset<WeakIndexingCategory> enumerate_weak_indexing_categories(
    const ContextPtr& ctx, const EnumerationOptions& opts) {
  auto sets = enumerate_closed(
      ctx->size(),
      [&](const ClassSet& s) { return ctx->close_category(s, opts.filter); },
      opts);
  std::vector<WeakIndexingCategory> nodes;
  for (auto& s : sets) {
    nodes.emplace_back(ctx, std::move(s));
  }
  return Poset<WeakIndexingCategory>(
      std::move(nodes),
      [](const WeakIndexingCategory& a, const WeakIndexingCategory& b) {
        return a.is_subset_of(b);
      });
}

Poset<WeakIndexingSystem> enumerate_weak_indexing_systems(
    const ContextPtr& ctx, const EnumerationOptions& opts) {
  auto sets = enumerate_closed(
      ctx->size(),
      [&](const ClassSet& s) { return ctx->close_system(s, opts.filter); },
      opts);
  std::vector<WeakIndexingSystem> nodes;
  for (auto& s : sets) {
    nodes.emplace_back(ctx, std::move(s));
  }
  return Poset<WeakIndexingSystem>(
      std::move(nodes),
      [](const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
        return a.admissible().is_subset_of(b.admissible());
      });
}

TransferSystem transfer_system_of(const WeakIndexingCategory& i) {
  if (!is_unital(i)) {
    throw InputError("transfer_system_of requires a unital category");
  }
  const IndexingContext& ctx = *i.context();
  const SubgroupLattice& lat = ctx.lattice();
  const FiniteGroup& grp = *ctx.group();
  const std::size_t n = lat.size();
  std::vector<bool> rel(n * n, false);
  for (std::size_t h = 0; h < n; ++h) {
    const std::size_t l = ctx.level_of_node(h);
    const Level& lv = ctx.level(l);
    Elem a = 0;
    for (Elem x = 0; x < grp.order(); ++x) {
      if (lat.node(h).conjugate(x) == lv.rep) {
        a = x;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!lat.leq(k, h)) {
        continue;
      }
      OrbitVector v(lv.sub.size(), 0);
      v[lv.classify(lat.node(k).conjugate(a))] = 1;
      auto idx = ctx.find(l, v);
      if (!idx) {
        throw CutoffOverflow("orbit map exceeds the cutoff");
      }
      rel[k * n + h] = i.contains_class(*idx);
    }
  }
  return TransferSystem(ctx.lattice_ptr(), std::move(rel));
}

Poset<TransferSystem> enumerate_transfer_systems(const GroupPtr& g,
                                                 std::size_t max_pairs) {
  auto lat = std::make_shared<const SubgroupLattice>(g);
  const std::size_t n = lat->size();
  std::vector<std::pair<std::size_t, std::size_t>> strict;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && lat->leq(a, b)) {
        strict.emplace_back(a, b);
      }
    }
  }
  if (strict.size() > max_pairs) {
    throw GuardError("transfer-system search over " +
                     std::to_string(strict.size()) + " inclusions exceeds " +
                     std::to_string(max_pairs));
  }
  std::vector<TransferSystem> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << strict.size());
       ++mask) {
    std::vector<bool> rel(n * n, false);
    for (std::size_t a = 0; a < n; ++a) {
      rel[a * n + a] = true;
    }
    for (std::size_t k = 0; k < strict.size(); ++k) {
      if ((mask >> k) & 1U) {
        rel[strict[k].first * n + strict[k].second] = true;
      }
    }
    TransferSystem t(lat, std::move(rel));
    if (validate_transfer_system(t)) {
      found.push_back(std::move(t));
    }
  }
  std::sort(found.begin(), found.end(),
            [](const TransferSystem& a, const TransferSystem& b) {
              const auto ca = std::count(a.relation().begin(), a.relation().end(), true);
              const auto cb = std::count(b.relation().begin(), b.relation().end(), true);
              if (ca != cb) return ca < cb;
              return a.relation() < b.relation();
            });
  return Poset<TransferSystem>(
      std::move(found), [](const TransferSystem& a, const TransferSystem& b) {
        return a.is_subset_of(b);
      });
}

}  // namespace ehkit
