#ifndef EHKIT_TESTS_ORACLES_HPP_
#define EHKIT_TESTS_ORACLES_HPP_

// Brute-force oracles. Each one is written from the definitions and shares no
// search code with the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "ehkit/gset.hpp"
#include "ehkit/magma.hpp"

namespace oracle {

using ehkit::Elem;
using ehkit::GSet;
using ehkit::Point;
using ehkit::Subgroup;

inline std::uint64_t catalan(unsigned n) {
  std::uint64_t c = 1;
  for (unsigned k = 0; k < n; ++k) {
    c = c * 2 * (2 * k + 1) / (k + 2);
  }
  return c;
}

/// Every H-set with at most `max_size` points, one per isomorphism class,
/// built from multisets of subgroups of H (H abelian, so classes are single
/// subgroups).
inline std::vector<GSet> all_hsets(const Subgroup& h, std::size_t max_size) {
  const auto subs = ehkit::subgroups_of(h);
  std::vector<GSet> out;
  std::vector<Subgroup> chosen;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from,
                                                          std::size_t size) {
    out.push_back(GSet::from_orbits(h, chosen));
    for (std::size_t k = from; k < subs.size(); ++k) {
      const std::size_t orbit = h.order() / subs[k].order();
      if (size + orbit <= max_size) {
        chosen.push_back(subs[k]);
        rec(k, size + orbit);
        chosen.pop_back();
      }
    }
  };
  rec(0, 0);
  return out;
}

/// Number of equivariant maps s → t: for each orbit of s, the targets y of a
/// chosen point x for which x ↦ y extends to a well-defined map on the orbit,
/// found by building the extension explicitly.
inline std::size_t hom_count(const GSet& s, const GSet& t) {
  const auto& members = s.acting().members();
  std::vector<bool> seen(s.size(), false);
  std::size_t total = 1;
  for (Point x = 0; x < s.size(); ++x) {
    if (seen[x]) continue;
    std::size_t choices = 0;
    for (Point y = 0; y < t.size(); ++y) {
      std::map<Point, Point> f;
      bool ok = true;
      for (Elem g : members) {
        const Point gx = s.act(g, x);
        const Point gy = t.act(g, y);
        auto [it, fresh] = f.emplace(gx, gy);
        if (!fresh && it->second != gy) {
          ok = false;
          break;
        }
      }
      choices += ok ? 1 : 0;
    }
    for (Elem g : members) seen[s.act(g, x)] = true;
    total *= choices;
  }
  return total;
}

/// |s^L| by scanning every point.
inline std::size_t fixed_count(const GSet& s, const Subgroup& l) {
  std::size_t n = 0;
  for (Point x = 0; x < s.size(); ++x) {
    bool fixed = true;
    for (Elem g : l.members()) fixed = fixed && s.act(g, x) == x;
    n += fixed ? 1 : 0;
  }
  return n;
}

/// Transfer systems on the subgroup lattice of an abelian group, by checking
/// every relation containing the diagonal.
inline std::size_t transfer_system_count(const ehkit::GroupPtr& g) {
  const auto subs = ehkit::subgroups(g);
  const std::size_t n = subs.size();
  std::vector<std::pair<std::size_t, std::size_t>> strict;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && subs[a].is_subgroup_of(subs[b])) strict.emplace_back(a, b);
    }
  }
  auto index = [&](const Subgroup& s) {
    return static_cast<std::size_t>(
        std::find(subs.begin(), subs.end(), s) - subs.begin());
  };
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << strict.size()); ++mask) {
    std::vector<bool> rel(n * n, false);
    for (std::size_t a = 0; a < n; ++a) rel[a * n + a] = true;
    for (std::size_t k = 0; k < strict.size(); ++k) {
      if ((mask >> k) & 1U) rel[strict[k].first * n + strict[k].second] = true;
    }
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (!rel[a * n + b]) continue;
        for (std::size_t c = 0; c < n && ok; ++c) {
          if (rel[b * n + c] && !rel[a * n + c]) ok = false;
          // restriction along c <= b
          if (subs[c].is_subgroup_of(subs[b])) {
            const std::size_t m = index(subs[a].intersect(subs[c]));
            if (!rel[m * n + c]) ok = false;
          }
        }
      }
    }
    count += ok ? 1 : 0;
  }
  return count;
}

/// Weak indexing systems for the trivial group at cutoff c: sets A of sizes in
/// [0, c] containing 1 and closed under n, n_1, ..., n_n ∈ A ⇒ Σ n_i ∈ A
/// (when Σ n_i <= c). Counted by checking every subset.
inline std::size_t trivial_group_systems(std::size_t c, bool unital_only,
                                         bool almost_unital_only) {
  std::size_t count = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << (c + 1)); ++a) {
    if (((a >> 1) & 1U) == 0) continue;
    bool ok = true;
    for (std::size_t n = 0; n <= c && ok; ++n) {
      if (((a >> n) & 1U) == 0) continue;
      // all sums of n members of A
      std::vector<bool> reach(c + 1, false);
      reach[0] = true;
      for (std::size_t step = 0; step < n; ++step) {
        std::vector<bool> next(c + 1, false);
        for (std::size_t s = 0; s <= c; ++s) {
          if (!reach[s]) continue;
          for (std::size_t m = 0; s + m <= c; ++m) {
            if ((a >> m) & 1U) next[s + m] = true;
          }
        }
        reach = next;
      }
      for (std::size_t s = 0; s <= c && ok; ++s) {
        if (reach[s] && ((a >> s) & 1U) == 0) ok = false;
      }
    }
    if (!ok) continue;
    const bool has_empty = (a & 1U) != 0;
    const bool nontrivial = (a & ~std::uint64_t{2}) != 0;
    if (unital_only && !has_empty) continue;
    if (almost_unital_only && nontrivial && !has_empty) continue;
    ++count;
  }
  return count;
}

// --- Interchanging pairs, literal reading, from the raw axioms --------------------

struct RawStructure {
  std::vector<ehkit::Value> me;  // se × se
  std::vector<ehkit::Value> mg;  // sg × sg
  std::vector<ehkit::Value> t;   // se → sg
  ehkit::Value ue;
  ehkit::Value ug;
};

inline std::vector<std::vector<ehkit::Value>> all_functions(std::size_t from,
                                                            std::size_t to) {
  std::vector<std::vector<ehkit::Value>> out;
  std::vector<ehkit::Value> f(from, 0);
  while (true) {
    out.push_back(f);
    std::size_t k = 0;
    while (k < from && ++f[k] == to) f[k++] = 0;
    if (k == from) break;
  }
  return out;
}

inline std::optional<ehkit::Value> find_unit(const std::vector<ehkit::Value>& m,
                                             std::size_t n) {
  for (ehkit::Value u = 0; u < n; ++u) {
    bool ok = true;
    for (ehkit::Value x = 0; x < n && ok; ++x) {
      ok = m[u * n + x] == x && m[x * n + u] == x;
    }
    if (ok) return u;
  }
  return std::nullopt;
}

/// Number of isomorphism classes of interchanging pairs at p = 2 with
/// |M^e| <= max_e, |M^{C_2}| <= max_g, under the literal reading and the full
/// relation set (including t_•(x∗y) = t_∗(x•y)).
inline std::size_t interchanging_pair_classes(std::size_t max_e,
                                              std::size_t max_g) {
  using V = ehkit::Value;
  std::set<std::vector<V>> classes;
  for (std::size_t se = 1; se <= max_e; ++se) {
    for (std::size_t sg = 1; sg <= max_g; ++sg) {
      const auto tables_e = all_functions(se * se, se);
      const auto tables_g = all_functions(sg * sg, sg);
      const auto maps_t = all_functions(se, sg);
      for (const auto& sigma : all_functions(se, se)) {
        bool inv = true;
        for (V x = 0; x < se; ++x) inv = inv && sigma[sigma[x]] == x;
        if (!inv) continue;
        for (const auto& r : all_functions(sg, se)) {
          bool fixed = true;
          for (V y = 0; y < sg; ++y) fixed = fixed && sigma[r[y]] == r[y];
          if (!fixed) continue;
          std::vector<RawStructure> ok;
          for (const auto& me : tables_e) {
            const auto ue = find_unit(me, se);
            if (!ue || sigma[*ue] != *ue) continue;
            bool eq = true;
            for (V a = 0; a < se && eq; ++a)
              for (V b = 0; b < se && eq; ++b)
                eq = sigma[me[a * se + b]] == me[sigma[a] * se + sigma[b]];
            if (!eq) continue;
            for (const auto& mg : tables_g) {
              const auto ug = find_unit(mg, sg);
              if (!ug || r[*ug] != *ue) continue;
              bool rh = true;
              for (V a = 0; a < sg && rh; ++a)
                for (V b = 0; b < sg && rh; ++b)
                  rh = r[mg[a * sg + b]] == me[r[a] * se + r[b]];
              if (!rh) continue;
              for (const auto& t : maps_t) {
                bool th = t[*ue] == *ug;
                for (V a = 0; a < se && th; ++a) {
                  th = t[sigma[a]] == t[a] && r[t[a]] == me[a * se + a];
                  for (V b = 0; b < se && th; ++b)
                    th = t[me[a * se + b]] == mg[t[a] * sg + t[b]];
                }
                if (th) ok.push_back({me, mg, t, *ue, *ug});
              }
            }
          }
          for (const auto& s : ok) {
            for (const auto& b : ok) {
              if (s.ue != b.ue || s.ug != b.ug) continue;
              bool good = true;
              for (V x = 0; x < se && good; ++x)
                for (V y = 0; y < se && good; ++y) {
                  good = b.t[s.me[x * se + y]] == s.t[b.me[x * se + y]] &&
                         b.t[s.me[x * se + y]] ==
                             s.mg[b.t[x] * sg + b.t[y]] &&
                         s.t[b.me[x * se + y]] == b.mg[s.t[x] * sg + s.t[y]];
                  for (V z = 0; z < se && good; ++z)
                    for (V w = 0; w < se && good; ++w)
                      good = b.me[s.me[x * se + y] * se + s.me[z * se + w]] ==
                             s.me[b.me[x * se + z] * se + b.me[y * se + w]];
                }
              for (V x = 0; x < se && good; ++x)
                good = r[b.t[x]] == s.me[x * se + x] &&
                       r[s.t[x]] == b.me[x * se + x];
              for (V x = 0; x < sg && good; ++x)
                for (V y = 0; y < sg && good; ++y)
                  for (V z = 0; z < sg && good; ++z)
                    for (V w = 0; w < sg && good; ++w)
                      good = b.mg[s.mg[x * sg + y] * sg + s.mg[z * sg + w]] ==
                             s.mg[b.mg[x * sg + z] * sg + b.mg[y * sg + w]];
              if (!good) continue;
              // least encoding over all relabelings of both carriers
              std::vector<V> pe(se), pg(sg);
              std::iota(pe.begin(), pe.end(), 0);
              std::vector<V> best;
              do {
                std::iota(pg.begin(), pg.end(), 0);
                do {
                  std::vector<V> key{static_cast<V>(se), static_cast<V>(sg)};
                  std::vector<V> ie(se), ig(sg);
                  for (V x = 0; x < se; ++x) ie[pe[x]] = x;
                  for (V x = 0; x < sg; ++x) ig[pg[x]] = x;
                  for (V x = 0; x < se; ++x) key.push_back(pe[sigma[ie[x]]]);
                  for (V y = 0; y < sg; ++y) key.push_back(pe[r[ig[y]]]);
                  for (const RawStructure* m : {&s, &b}) {
                    for (V x = 0; x < se; ++x)
                      for (V y = 0; y < se; ++y)
                        key.push_back(pe[m->me[ie[x] * se + ie[y]]]);
                    for (V x = 0; x < sg; ++x)
                      for (V y = 0; y < sg; ++y)
                        key.push_back(pg[m->mg[ig[x] * sg + ig[y]]]);
                    for (V x = 0; x < se; ++x) key.push_back(pg[m->t[ie[x]]]);
                  }
                  if (best.empty() || key < best) best = key;
                } while (std::next_permutation(pg.begin(), pg.end()));
              } while (std::next_permutation(pe.begin(), pe.end()));
              classes.insert(best);
            }
          }
        }
      }
    }
  }
  return classes.size();
}

}  // namespace oracle

#endif  // EHKIT_TESTS_ORACLES_HPP_
