#include "ehkit/connectivity.hpp"

#include <algorithm>
#include <limits>

namespace ehkit {

std::int64_t ExtInt::value() const {
  if (inf_) {
    throw InputError("ExtInt: value of infinity");
  }
  return value_;
}

std::string ExtInt::to_string() const {
  return inf_ ? "inf" : std::to_string(value_);
}

CategoryPosetPtr almost_unital_domain(const ContextPtr& ctx, std::size_t jobs) {
  EnumerationOptions opts;
  opts.filter = Filter::almost_unital;
  opts.jobs = jobs;
  return std::make_shared<const CategoryPoset>(
      enumerate_weak_indexing_categories(ctx, opts));
}

std::size_t domain_index(const CategoryPoset& domain,
                         const WeakIndexingCategory& i) {
  const auto& nodes = domain.nodes();
  // Nodes are sorted by class set.
  auto it = std::lower_bound(nodes.begin(), nodes.end(), i,
                             [](const WeakIndexingCategory& a,
                                const WeakIndexingCategory& b) {
                               return a.maps() < b.maps();
                             });
  if (it == nodes.end() || !(*it == i)) {
    throw InputError("category is not a node of the domain poset");
  }
  return static_cast<std::size_t>(it - nodes.begin());
}

ConnFunction::ConnFunction(CategoryPosetPtr domain, std::vector<ExtInt> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (!domain_ || values_.size() != domain_->size()) {
    throw InputError("connectivity function must be total on its domain");
  }
}

ConnFunction constant_conn(const CategoryPosetPtr& domain, ExtInt v) {
  return ConnFunction(domain, std::vector<ExtInt>(domain->size(), v));
}

ConnFunction conn_n_infty(const CategoryPosetPtr& domain,
                          const WeakIndexingCategory& i) {
  if (!is_almost_unital(i)) {
    throw InputError("conn_n_infty: category is not almost unital");
  }
  std::vector<ExtInt> values;
  values.reserve(domain->size());
  for (const auto& j : domain->nodes()) {
    if (j.context() != i.context()) {
      throw InputError("conn_n_infty: category and domain differ in context");
    }
    values.push_back(j.is_subset_of(i) ? ExtInt::infinity() : ExtInt(-2));
  }
  return ConnFunction(domain, std::move(values));
}

ConnFunction conn_add(const ConnFunction& f, const ConnFunction& g) {
  if (f.domain() != g.domain()) {
    throw InputError("conn_add: functions live on different domains");
  }
  std::vector<ExtInt> values(f.values().size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = f(k) + g(k);
  }
  return ConnFunction(f.domain(), std::move(values));
}

ConnFunction conn_shift(const ConnFunction& f, std::int64_t k) {
  std::vector<ExtInt> values = f.values();
  for (auto& v : values) {
    v = v + ExtInt(k);
  }
  return ConnFunction(f.domain(), std::move(values));
}

bool conn_leq(const ConnFunction& f, const ConnFunction& g) {
  if (f.domain() != g.domain()) {
    throw InputError("conn_leq: functions live on different domains");
  }
  for (std::size_t k = 0; k < f.values().size(); ++k) {
    if (f(k) > g(k)) {
      return false;
    }
  }
  return true;
}

LehaReport leha_check(const CategoryPosetPtr& domain,
                      const WeakIndexingCategory& i,
                      const WeakIndexingCategory& j) {
  LehaReport rep;
  const WeakIndexingCategory ij = join(i, j, Filter::almost_unital);
  const ConnFunction lhs =
      conn_shift(conn_add(conn_n_infty(domain, i), conn_n_infty(domain, j)), 2);
  const ConnFunction rhs = conn_n_infty(domain, ij);
  rep.holds = conn_leq(lhs, rhs);
  for (std::size_t k = 0; k < domain->size(); ++k) {
    if (lhs(k) < rhs(k)) {
      rep.strict_witnesses.push_back(k);
    }
  }
  const std::size_t a = domain_index(*domain, i);
  const std::size_t b = domain_index(*domain, j);
  rep.join_node = domain_index(*domain, ij);
  for (std::size_t k = 0; k < domain->size(); ++k) {
    if (domain->leq(k, rep.join_node) && !domain->leq(k, a) &&
        !domain->leq(k, b)) {
      rep.predicted.push_back(k);
    }
  }
  return rep;
}

// --- Little V-disks -----------------------------------------------------------------

RepDimension::RepDimension(std::shared_ptr<const SubgroupLattice> lattice,
                           std::vector<std::size_t> dims)
    : lattice_(std::move(lattice)), dims_(std::move(dims)) {
  if (dims_.size() != lattice_->size()) {
    throw InputError("RepDimension: one dimension per subgroup required");
  }
}

RepDimension RepDimension::c2(std::size_t a, std::size_t b) {
  auto lat = std::make_shared<const SubgroupLattice>(cyclic_group(2));
  // Node 0 is e, node 1 is C_2.
  return RepDimension(lat, {a + b, a});
}

std::size_t RepDimension::dim(const Subgroup& h) const {
  return dims_.at(lattice_->index_of(h));
}

std::string C2Set::to_string() const {
  if (at_e) {
    return std::to_string(k) + "*_e";
  }
  return std::to_string(c) + "*_C2 + " + std::to_string(d) + "[C2/e]";
}

ExtInt e_v_conn_c2(std::size_t a, std::size_t b, const C2Set& s) {
  const auto ia = static_cast<std::int64_t>(a);
  const auto ib = static_cast<std::int64_t>(b);
  // At most one point in every fixed-point set: the configuration spaces are
  // contractible.
  if ((s.at_e && s.k <= 1) || (!s.at_e && s.d == 0 && s.c <= 1)) {
    return ExtInt::infinity();
  }
  std::int64_t v = 0;
  if (s.at_e) {
    v = ia + ib - 2;
  } else if (s.d == 0) {
    v = ia - 2;
  } else if (s.c < 2) {
    v = ib - 2;
  } else {
    v = std::min(ia, ib) - 2;
  }
  return ExtInt(std::max<std::int64_t>(v, -2));
}

GSet c2_gset(const GroupPtr& c2, const C2Set& s) {
  if (c2->order() != 2) {
    throw InputError("c2_gset: group is not C_2");
  }
  if (s.at_e) {
    const Subgroup e = Subgroup::trivial(c2);
    return GSet::from_orbits(e, std::vector<Subgroup>(s.k, e));
  }
  const Subgroup whole = Subgroup::whole(c2);
  std::vector<Subgroup> stabs(s.c, whole);
  stabs.insert(stabs.end(), s.d, Subgroup::trivial(c2));
  return GSet::from_orbits(whole, stabs);
}

namespace {

// Upper bounds on ℓ imposed by conditions (a) and (b).
std::vector<std::int64_t> ev_bounds(const RepDimension& v, const GSet& s) {
  const SubgroupLattice& lat = v.lattice();
  const Subgroup& h = s.acting();
  if (h.group()->order() != lat.group()->order() ||
      h.group()->table() != lat.group()->table()) {
    throw InputError("e_v: set and representation live over different groups");
  }
  const std::size_t hn = lat.index_of(h);
  std::vector<std::int64_t> out;
  for (const auto& orbit : s.orbits()) {
    const std::size_t kn = lat.index_of(s.stabilizer(orbit.front()));
    for (std::size_t jn = 0; jn < lat.size(); ++jn) {
      if (jn != kn && lat.leq(kn, jn) && lat.leq(jn, hn)) {
        out.push_back(static_cast<std::int64_t>(v.dim(kn)) -
                      static_cast<std::int64_t>(v.dim(jn)) - 2);
      }
    }
  }
  if (fixed_points(s, h).size() >= 2) {
    out.push_back(static_cast<std::int64_t>(v.dim(hn)) - 2);
  }
  return out;
}

}  // namespace

bool e_v_conn_general(const RepDimension& v, const GSet& s, std::int64_t ell) {
  const auto bounds = ev_bounds(v, s);
  return std::all_of(bounds.begin(), bounds.end(),
                     [ell](std::int64_t b) { return ell <= b; });
}

EvConnReport e_v_conn_value(const RepDimension& v, const GSet& s) {
  const auto bounds = ev_bounds(v, s);
  EvConnReport rep;
  rep.constraints = bounds.size();
  if (bounds.empty()) {
    rep.value = ExtInt::infinity();
    return rep;
  }
  rep.value = ExtInt(std::max<std::int64_t>(
      *std::min_element(bounds.begin(), bounds.end()), -2));
  return rep;
}

NonAdditivityReport non_additivity_witness(std::size_t a_prime, std::size_t b) {
  if (a_prime <= 1 || b <= 1) {
    throw InputError("non_additivity_witness: requires a', b > 1");
  }
  const C2Set s = C2Set::level_c2(2, 1);
  NonAdditivityReport rep;
  rep.lhs_bound = e_v_conn_c2(1, b, s) + e_v_conn_c2(a_prime, 1, s) + ExtInt(2);
  rep.rhs = e_v_conn_c2(a_prime + 1, b + 1, s);
  rep.strict = rep.lhs_bound < rep.rhs;
  return rep;
}

}  // namespace ehkit
