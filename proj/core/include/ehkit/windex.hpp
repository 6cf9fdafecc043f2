#ifndef EHKIT_WINDEX_HPP_
#define EHKIT_WINDEX_HPP_

// Weak indexing categories and systems for a finite group G, truncated at a
// size cutoff.
//
// Every map T → S of finite G-sets splits over the orbits of S, and the piece
// over an orbit G/H is Ind_H^G F → G/H for the H-set F (its fiber over eH).
// Such "elementary" maps are classified up to isomorphism by the G-class of H
// and the orbit data of F modulo the twist by N_G(H). A weak indexing category
// satisfies the Segal condition, so it is determined by the elementary maps it
// contains; the same data, read level by level, is its weak indexing system.
// The cutoff c keeps exactly the elementary maps with [G:H]·|F| <= c, which
// are precisely the pieces of maps whose source and target have at most c
// points.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ehkit/class_set.hpp"
#include "ehkit/error.hpp"
#include "ehkit/group.hpp"
#include "ehkit/gset.hpp"
#include "ehkit/poset.hpp"

namespace ehkit {

enum class Filter { all, unital, almost_unital };

const char* to_string(Filter f);
/// Accepts "all", "unital", "almost_unital" (or "almost-unital").
Filter parse_filter(const std::string& s);

/// Orbit counts of an H-set, indexed by the H-conjugacy classes of subgroups
/// of H in canonical order.
using OrbitVector = std::vector<std::uint32_t>;

/// One conjugacy class of subgroups of G, with the H-conjugacy classes of its
/// own subgroups.
struct Level {
  std::size_t node;                    // lattice node of the representative
  Subgroup rep;                        // H
  std::size_t index;                   // [G:H]
  std::vector<Subgroup> sub;           // H-class representatives, canonical
  std::vector<std::size_t> sub_index;  // [H:M] for M in sub
  std::size_t point_class;             // position of H itself in sub
  /// Permutations of `sub` induced by conjugation with N_G(H), deduplicated.
  std::vector<std::vector<std::size_t>> twists;
  std::map<std::uint64_t, std::size_t> class_of_mask;

  /// H-class of a subgroup m <= H.
  std::size_t classify(const Subgroup& m) const;
  std::size_t fiber_size(const OrbitVector& v) const;
};

/// An isomorphism class of elementary maps Ind_H^G F → G/H.
struct Elementary {
  std::size_t level;
  OrbitVector fiber;
  auto operator<=>(const Elementary&) const = default;
};

/// All elementary classes of one group below a cutoff, together with the
/// closure machinery. Shared by every category/system built over it.
class IndexingContext {
 public:
  /// Throws InputError if cutoff < |G| (orbit maps must be representable).
  static std::shared_ptr<const IndexingContext> create(GroupPtr g,
                                                       std::size_t cutoff);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t cutoff() const noexcept { return cutoff_; }
  const SubgroupLattice& lattice() const noexcept { return *lattice_; }
  const std::shared_ptr<const SubgroupLattice>& lattice_ptr() const noexcept {
    return lattice_;
  }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const Level& level(std::size_t l) const { return levels_.at(l); }
  /// Level of a lattice node.
  std::size_t level_of_node(std::size_t node) const {
    return level_of_node_.at(node);
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const Elementary& element(std::size_t i) const { return elements_.at(i); }
  /// Elements of one level, ascending.
  const std::vector<std::size_t>& level_elements(std::size_t l) const {
    return by_level_.at(l);
  }
  /// |Ind_H^G F|
  std::size_t source_size(std::size_t i) const;
  /// [G:H]
  std::size_t target_size(std::size_t i) const;

  /// Least representative of the N_G(H)-twist orbit of v.
  OrbitVector canonical(std::size_t level, const OrbitVector& v) const;
  /// Index of the class, or nullopt if it lies beyond the cutoff.
  std::optional<std::size_t> find(std::size_t level, const OrbitVector& v) const;
  std::optional<std::size_t> find(const Elementary& e) const {
    return find(e.level, e.fiber);
  }
  std::size_t unit(std::size_t level) const;   // *_H
  std::size_t empty(std::size_t level) const;  // ∅_H

  /// Concrete representative Ind_H^G F → G/H (target built by induce).
  GSetMap concrete(std::size_t i) const;
  /// Elementary class of f over the orbit of its target containing `base`.
  /// Throws CutoffOverflow if the class lies beyond the cutoff.
  std::size_t classify_fiber(const GSetMap& f, Point base) const;
  /// Segal decomposition: one class per orbit of the target, sorted.
  std::vector<std::size_t> decompose(const GSetMap& f) const;

  /// e.g. "C2/e:[2*e]" style description of a class.
  std::string describe(std::size_t i) const;

  /// Category-side closure: fixpoint of pullback along orbit maps, composition
  /// and adjoining identities, computed with concrete G-set operations. With
  /// `unital`, every ∅_H is adjoined; with `almost_unital`, ∅_H is adjoined
  /// whenever level H carries a nontrivial arity.
  ClassSet close_category(const ClassSet& seed, Filter filter) const;
  /// System-side closure: restriction, conjugation and self-indexed
  /// coproducts computed by orbit arithmetic.
  ClassSet close_system(const ClassSet& seed, Filter filter) const;

  /// Pullbacks of element i along every orbit map into its target (classes
  /// within the cutoff), computed concretely.
  const std::vector<std::size_t>& pullbacks(std::size_t i) const;
  /// Composites of element g with a fiber of class t substituted for one
  /// orbit of g's source of class `slot` (an index into the level's `sub`).
  std::vector<std::size_t> substitutions(std::size_t g, std::size_t slot,
                                         std::size_t t) const;

  /// Orbit-arithmetic counterparts used by the system side.
  std::vector<std::size_t> restrictions_arith(std::size_t i) const;
  std::vector<std::size_t> substitutions_arith(std::size_t g, std::size_t slot,
                                               std::size_t t) const;

  /// G-level of slot `slot` of level l.
  std::size_t slot_level(std::size_t l, std::size_t slot) const {
    return slot_level_.at(l).at(slot);
  }

 private:
  IndexingContext(GroupPtr g, std::size_t cutoff);
  void build_tables() const;
  void build_arith() const;
  std::size_t position_in_level(std::size_t i) const;

  GroupPtr group_;
  std::size_t cutoff_;
  std::shared_ptr<const SubgroupLattice> lattice_;
  std::vector<Level> levels_;
  std::vector<std::size_t> level_of_node_;
  std::vector<std::vector<std::size_t>> slot_level_;
  std::vector<Elementary> elements_;
  std::map<Elementary, std::size_t> index_;
  std::vector<std::vector<std::size_t>> by_level_;

  // Concrete tables, built on first use.
  mutable std::once_flag tables_once_;
  mutable std::vector<std::vector<std::size_t>> pull_;
  // subst_[g][slot][k] = results for the k-th element of the slot's level.
  mutable std::vector<std::vector<std::vector<std::vector<std::size_t>>>> subst_;
  // (g, slot) pairs whose slot lies at each level.
  mutable std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
      slots_at_level_;
  mutable std::vector<std::size_t> position_in_level_;

  // Arithmetic tables for the system side, built on first use.
  mutable std::once_flag arith_once_;
  mutable std::vector<std::vector<std::size_t>> arith_pull_;
  mutable std::vector<std::vector<std::vector<std::vector<std::size_t>>>>
      arith_subst_;
};

using ContextPtr = std::shared_ptr<const IndexingContext>;

/// A one-color weak indexing category, stored as its elementary maps.
class WeakIndexingCategory {
 public:
  WeakIndexingCategory(ContextPtr ctx, ClassSet maps)
      : ctx_(std::move(ctx)), maps_(std::move(maps)) {}

  const ContextPtr& context() const noexcept { return ctx_; }
  const ClassSet& maps() const noexcept { return maps_; }
  bool contains_class(std::size_t i) const { return maps_.test(i); }
  /// Segal membership test for an arbitrary map within the cutoff.
  bool contains(const GSetMap& f) const;
  /// 16-hex-digit digest of the admissible classes.
  std::string fingerprint() const;

  bool operator==(const WeakIndexingCategory& o) const {
    return maps_ == o.maps_;
  }
  bool is_subset_of(const WeakIndexingCategory& o) const {
    return maps_.is_subset_of(o.maps_);
  }

 private:
  ContextPtr ctx_;
  ClassSet maps_;
};

/// A one-color weak indexing system: admissible H-sets per subgroup class.
class WeakIndexingSystem {
 public:
  WeakIndexingSystem(ContextPtr ctx, ClassSet admissible)
      : ctx_(std::move(ctx)), admissible_(std::move(admissible)) {}

  const ContextPtr& context() const noexcept { return ctx_; }
  const ClassSet& admissible() const noexcept { return admissible_; }
  bool is_admissible(std::size_t level, const OrbitVector& v) const;
  /// Is the H-set s admissible, H its acting subgroup (any conjugate of a
  /// level representative).
  bool is_admissible(const GSet& s) const;
  /// Admissible orbit vectors of one level.
  std::vector<OrbitVector> admissible_at(std::size_t level) const;

  bool operator==(const WeakIndexingSystem& o) const {
    return admissible_ == o.admissible_;
  }

 private:
  ContextPtr ctx_;
  ClassSet admissible_;
};

/// A transfer system: a partial order on subgroups refining inclusion,
/// closed under conjugation and restriction.
class TransferSystem {
 public:
  TransferSystem(std::shared_ptr<const SubgroupLattice> lattice,
                 std::vector<bool> rel);

  const SubgroupLattice& lattice() const noexcept { return *lattice_; }
  /// K → H, i.e. the transfer from node k to node h is present.
  bool related(std::size_t k, std::size_t h) const {
    return rel_[k * lattice_->size() + h];
  }
  const std::vector<bool>& relation() const noexcept { return rel_; }
  bool is_subset_of(const TransferSystem& o) const;
  bool operator==(const TransferSystem& o) const { return rel_ == o.rel_; }

 private:
  std::shared_ptr<const SubgroupLattice> lattice_;
  std::vector<bool> rel_;
};

ValidityReport validate_transfer_system(const TransferSystem& t);

// --- Named objects -----------------------------------------------------------

/// I_triv: isomorphisms only.
WeakIndexingCategory trivial_category(const ContextPtr& ctx);
/// F_G truncated at the cutoff.
WeakIndexingCategory complete_category(const ContextPtr& ctx);
/// I_∞: fibers n·*_H for all n and H.
WeakIndexingCategory infinity_category(const ContextPtr& ctx);
/// I_{0,F}: fibers ∅_H and *_H for H in the family, *_H otherwise. `family`
/// holds levels and must be closed under subconjugacy.
WeakIndexingCategory zero_family_category(const ContextPtr& ctx,
                                          const std::set<std::size_t>& family);

// --- Validity ------------------------------------------------------------------

/// A map class: the sorted Segal components of a map, as context indices.
using MapClass = std::vector<std::size_t>;

/// Every map class with source and target within the cutoff. Throws
/// GuardError past `max_classes`.
std::vector<MapClass> all_map_classes(const IndexingContext& ctx,
                                      std::size_t max_classes = 500000);
/// The explicit set of map classes of a category.
std::set<MapClass> explicit_maps(const WeakIndexingCategory& i,
                                 std::size_t max_classes = 500000);

/// Checks an explicit candidate set of map classes for the four axiom
/// families in the order: wide, pullback-stable, composition, Segal.
ValidityReport is_weak_indexing_category(const ContextPtr& ctx,
                                         const std::set<MapClass>& candidate);
/// Elementary-level check for a category in Segal form.
ValidityReport is_weak_indexing_category(const WeakIndexingCategory& i);
ValidityReport is_weak_indexing_system(const WeakIndexingSystem& f);

// --- Conversions and lattice operations -------------------------------------------

WeakIndexingSystem system_of_category(const WeakIndexingCategory& i);
/// The least weak indexing category whose admissible sets are f. Throws
/// InputError if f is not closed (the closure would admit more sets).
WeakIndexingCategory category_of_system(const WeakIndexingSystem& f);

/// Levels H with ∅_H admissible.
std::set<std::size_t> unit_family(const WeakIndexingCategory& i);
bool is_unital(const WeakIndexingCategory& i);
/// Definitional: whenever a level has an arity other than *_H, ∅_H is
/// admissible there.
bool is_almost_unital(const WeakIndexingCategory& i);
/// Summand characterization: every nonempty summand of an admissible set is
/// admissible.
bool is_almost_unital_by_summands(const WeakIndexingCategory& i);

/// Least object of the filter class containing both.
WeakIndexingCategory join(const WeakIndexingCategory& i,
                          const WeakIndexingCategory& j,
                          Filter filter = Filter::all);
WeakIndexingCategory meet(const WeakIndexingCategory& i,
                          const WeakIndexingCategory& j);

/// Least weak indexing category containing the generators; with `unital`,
/// also every ∅ → S. Throws CutoffOverflow if a generator exceeds the cutoff.
WeakIndexingCategory generate_windex(const ContextPtr& ctx,
                                     const std::vector<GSetMap>& generators,
                                     bool unital = false);

/// Restrict a category to the (smaller) cutoff of `smaller`.
WeakIndexingCategory truncate(const WeakIndexingCategory& i,
                              const ContextPtr& smaller);

// --- Enumeration ---------------------------------------------------------------------

struct EnumerationOptions {
  Filter filter = Filter::all;
  std::size_t jobs = 1;
  std::size_t max_objects = 200000;
};

/// All weak indexing categories in the filter class, ordered by inclusion.
/// Nodes are sorted by (number of classes, class list).
Poset<WeakIndexingCategory> enumerate_weak_indexing_categories(
    const ContextPtr& ctx, const EnumerationOptions& opts = {});
/// The same enumeration driven by the system-side closure.
Poset<WeakIndexingSystem> enumerate_weak_indexing_systems(
    const ContextPtr& ctx, const EnumerationOptions& opts = {});

/// K → H iff G/K → G/H is admissible. Throws InputError unless i is unital.
TransferSystem transfer_system_of(const WeakIndexingCategory& i);
/// Brute force over relations on subgroups. Throws GuardError if the group
/// has more than `max_pairs` strict inclusions.
Poset<TransferSystem> enumerate_transfer_systems(const GroupPtr& g,
                                                 std::size_t max_pairs = 30);

/// Default cutoff 3·|G|.
inline std::size_t default_cutoff(const GroupPtr& g) { return 3 * g->order(); }

}  // namespace ehkit

#endif  // EHKIT_WINDEX_HPP_
