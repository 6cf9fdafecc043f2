#ifndef EHKIT_GROUP_HPP_
#define EHKIT_GROUP_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ehkit {

using Elem = std::uint32_t;

/// Largest supported group order; subgroups are stored as 64-bit masks.
inline constexpr std::size_t kMaxGroupOrder = 64;

/// A finite group given by its full multiplication table. Elements are the
/// ids 0..order-1. Construction validates the group axioms.
class FiniteGroup {
 public:
  /// Throws InputError when the table is not a group (closure, associativity,
  /// identity, inverses) or the order exceeds kMaxGroupOrder.
  static std::shared_ptr<const FiniteGroup> from_table(
      std::string name, const std::vector<std::vector<Elem>>& table);

  const std::string& name() const noexcept { return name_; }
  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return identity_; }

  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * order_ + b]; }
  Elem inverse(Elem a) const noexcept { return inverse_[a]; }
  /// g x g^-1
  Elem conjugate(Elem g, Elem x) const noexcept {
    return mul(mul(g, x), inverse(g));
  }

  bool is_abelian() const noexcept { return abelian_; }
  std::vector<std::vector<Elem>> table() const;

 private:
  FiniteGroup() = default;

  std::string name_;
  std::size_t order_ = 0;
  std::vector<Elem> mul_;
  std::vector<Elem> inverse_;
  Elem identity_ = 0;
  bool abelian_ = true;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Z/n with mul = addition mod n. Throws InputError for n == 0.
GroupPtr cyclic_group(std::size_t n);

/// Direct product with element id a * |H| + b for (a, b).
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h);

/// A subgroup of a finite group, stored as a membership mask.
class Subgroup {
 public:
  /// Throws InputError if `members` is not closed under mul and inverse.
  Subgroup(GroupPtr group, const std::vector<Elem>& members);

  static Subgroup whole(const GroupPtr& group);
  static Subgroup trivial(const GroupPtr& group);
  /// Smallest subgroup containing `gens`.
  static Subgroup generated(const GroupPtr& group, const std::vector<Elem>& gens);

  const GroupPtr& group() const noexcept { return group_; }
  const FiniteGroup& ambient() const noexcept { return *group_; }
  std::uint64_t mask() const noexcept { return mask_; }
  const std::vector<Elem>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(Elem x) const noexcept { return (mask_ >> x) & 1U; }

  bool is_subgroup_of(const Subgroup& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  /// g H g^-1
  Subgroup conjugate(Elem g) const;
  Subgroup intersect(const Subgroup& other) const;
  /// [other : this]; requires this <= other.
  std::size_t index_in(const Subgroup& other) const noexcept {
    return other.order() / order();
  }

  std::string to_string() const;

  bool operator==(const Subgroup& other) const noexcept {
    return mask_ == other.mask_;
  }
  /// Canonical order: cardinality, then lexicographic member list.
  std::strong_ordering operator<=>(const Subgroup& other) const;

 private:
  Subgroup(GroupPtr group, std::uint64_t mask);

  GroupPtr group_;
  std::uint64_t mask_ = 0;
  std::vector<Elem> members_;
};

/// All subgroups of g in canonical order.
std::vector<Subgroup> subgroups(const GroupPtr& g);

/// Subgroups of h (as subgroups of the ambient group) in canonical order.
std::vector<Subgroup> subgroups_of(const Subgroup& h);

/// Canonical representative of the h-conjugacy class of k (k <= h): the least
/// conjugate in canonical order.
Subgroup class_representative(const Subgroup& h, const Subgroup& k);

/// Containment order and conjugacy partition of the subgroups of a group.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(GroupPtr g);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Subgroup>& nodes() const noexcept { return nodes_; }
  const Subgroup& node(std::size_t i) const { return nodes_.at(i); }

  /// nodes()[a] <= nodes()[b]
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  std::size_t index_of(const Subgroup& h) const;
  std::size_t top() const noexcept { return size() - 1; }
  std::size_t bottom() const noexcept { return 0; }

  /// Conjugacy class id of node i. Classes are numbered in the canonical
  /// order of their least member.
  std::size_t class_of(std::size_t i) const { return class_of_.at(i); }
  std::size_t class_count() const noexcept { return classes_.size(); }
  /// Node ids of class c; the first entry is the representative.
  const std::vector<std::size_t>& class_members(std::size_t c) const {
    return classes_.at(c);
  }
  std::size_t class_representative(std::size_t c) const {
    return classes_.at(c).front();
  }
  /// Node id of g H g^-1 for H = node(i).
  std::size_t conjugate_node(std::size_t i, Elem g) const;

  /// Covering pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

 private:
  GroupPtr group_;
  std::vector<Subgroup> nodes_;
  std::vector<bool> leq_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> classes_;
};

SubgroupLattice subgroup_lattice(const GroupPtr& g);

}  // namespace ehkit

#endif  // EHKIT_GROUP_HPP_
