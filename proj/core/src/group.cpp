#include "ehkit/group.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "ehkit/error.hpp"

namespace ehkit {

namespace {

std::vector<Elem> mask_members(std::uint64_t mask) {
  std::vector<Elem> out;
  while (mask != 0) {
    out.push_back(static_cast<Elem>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

GroupPtr FiniteGroup::from_table(std::string name,
                                 const std::vector<std::vector<Elem>>& table) {
  const std::size_t n = table.size();
  if (n == 0) {
    throw InputError("group table is empty");
  }
  if (n > kMaxGroupOrder) {
    throw InputError("group order " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxGroupOrder));
  }
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->name_ = std::move(name);
  g->order_ = n;
  g->mul_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) {
      throw InputError("group table row " + std::to_string(a) +
                       " has wrong length");
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) {
        throw InputError("group table entry out of range");
      }
      g->mul_[a * n + b] = table[a][b];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c))) {
          std::ostringstream os;
          os << "group table is not associative at (" << a << "," << b << ","
             << c << ")";
          throw InputError(os.str());
        }
      }
    }
  }
  bool found = false;
  for (Elem e = 0; e < n && !found; ++e) {
    bool two_sided = true;
    for (Elem x = 0; x < n && two_sided; ++x) {
      two_sided = g->mul(e, x) == x && g->mul(x, e) == x;
    }
    if (two_sided) {
      g->identity_ = e;
      found = true;
    }
  }
  if (!found) {
    throw InputError("group table has no two-sided identity");
  }
  g->inverse_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (Elem b = 0; b < n; ++b) {
      if (g->mul(a, b) == g->identity_ && g->mul(b, a) == g->identity_) {
        g->inverse_[a] = b;
        has_inverse = true;
        break;
      }
    }
    if (!has_inverse) {
      throw InputError("element " + std::to_string(a) + " has no inverse");
    }
  }
  for (Elem a = 0; a < n && g->abelian_; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (g->mul(a, b) != g->mul(b, a)) {
        g->abelian_ = false;
        break;
      }
    }
  }
  return g;
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  std::vector<std::vector<Elem>> out(order_, std::vector<Elem>(order_));
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b) {
      out[a][b] = mul_[a * order_ + b];
    }
  }
  return out;
}

GroupPtr cyclic_group(std::size_t n) {
  if (n == 0) {
    throw InputError("cyclic group order must be positive");
  }
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      t[a][b] = static_cast<Elem>((a + b) % n);
    }
  }
  return FiniteGroup::from_table("C" + std::to_string(n), t);
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h) {
  const std::size_t m = h->order();
  const std::size_t n = g->order() * m;
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Elem a = g->mul(static_cast<Elem>(x / m), static_cast<Elem>(y / m));
      const Elem b = h->mul(static_cast<Elem>(x % m), static_cast<Elem>(y % m));
      t[x][y] = static_cast<Elem>(a * m + b);
    }
  }
  return FiniteGroup::from_table(g->name() + "x" + h->name(), t);
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(GroupPtr group, std::uint64_t mask)
    : group_(std::move(group)), mask_(mask), members_(mask_members(mask)) {}

Subgroup::Subgroup(GroupPtr group, const std::vector<Elem>& members)
    : group_(std::move(group)) {
  for (Elem x : members) {
    if (x >= group_->order()) {
      throw InputError("subgroup member out of range");
    }
    mask_ |= std::uint64_t{1} << x;
  }
  members_ = mask_members(mask_);
  if (!contains(group_->identity())) {
    throw InputError("subset does not contain the identity");
  }
  for (Elem a : members_) {
    if (!contains(group_->inverse(a))) {
      throw InputError("subset not closed under inverses");
    }
    for (Elem b : members_) {
      if (!contains(group_->mul(a, b))) {
        throw InputError("subset not closed under multiplication");
      }
    }
  }
}

Subgroup Subgroup::whole(const GroupPtr& group) {
  const std::size_t n = group->order();
  const std::uint64_t mask =
      n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return Subgroup(group, mask);
}

Subgroup Subgroup::trivial(const GroupPtr& group) {
  return Subgroup(group, std::uint64_t{1} << group->identity());
}

Subgroup Subgroup::generated(const GroupPtr& group,
                             const std::vector<Elem>& gens) {
  std::uint64_t mask = std::uint64_t{1} << group->identity();
  std::vector<Elem> frontier{group->identity()};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier) {
      for (Elem s : gens) {
        const Elem y = group->mul(x, s);
        if (((mask >> y) & 1U) == 0) {
          mask |= std::uint64_t{1} << y;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return Subgroup(group, mask);
}

Subgroup Subgroup::conjugate(Elem g) const {
  std::uint64_t mask = 0;
  for (Elem x : members_) {
    mask |= std::uint64_t{1} << group_->conjugate(g, x);
  }
  return Subgroup(group_, mask);
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  return Subgroup(group_, mask_ & other.mask_);
}

std::string Subgroup::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    os << (i ? "," : "") << members_[i];
  }
  os << '}';
  return os.str();
}

std::strong_ordering Subgroup::operator<=>(const Subgroup& other) const {
  if (auto c = members_.size() <=> other.members_.size(); c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(
      members_.begin(), members_.end(), other.members_.begin(),
      other.members_.end());
}

// ---------------------------------------------------------------------------

std::vector<Subgroup> subgroups_of(const Subgroup& h) {
  const GroupPtr& g = h.group();
  std::vector<Subgroup> found{Subgroup::trivial(g)};
  std::unordered_set<std::uint64_t> seen{found.front().mask()};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Elem x : h.members()) {
      if (found[i].contains(x)) {
        continue;
      }
      std::vector<Elem> gens = found[i].members();
      gens.push_back(x);
      Subgroup s = Subgroup::generated(g, gens);
      if (seen.insert(s.mask()).second) {
        found.push_back(std::move(s));
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<Subgroup> subgroups(const GroupPtr& g) {
  return subgroups_of(Subgroup::whole(g));
}

Subgroup class_representative(const Subgroup& h, const Subgroup& k) {
  Subgroup best = k;
  for (Elem x : h.members()) {
    Subgroup c = k.conjugate(x);
    if (c < best) {
      best = std::move(c);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// SubgroupLattice

SubgroupLattice::SubgroupLattice(GroupPtr g)
    : group_(std::move(g)), nodes_(subgroups(group_)) {
  const std::size_t n = nodes_.size();
  leq_.assign(n * n, false);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      leq_[a * n + b] = nodes_[a].is_subgroup_of(nodes_[b]);
    }
  }
  class_of_.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (class_of_[i] != n) {
      continue;
    }
    const std::size_t c = classes_.size();
    std::vector<std::size_t> members;
    for (Elem x = 0; x < group_->order(); ++x) {
      const std::size_t j = index_of(nodes_[i].conjugate(x));
      if (class_of_[j] == n) {
        class_of_[j] = c;
        members.push_back(j);
      }
    }
    std::sort(members.begin(), members.end());
    classes_.push_back(std::move(members));
  }
}

std::size_t SubgroupLattice::index_of(const Subgroup& h) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), h);
  if (it == nodes_.end() || !(*it == h)) {
    throw InputError("not a subgroup of " + group_->name() + ": " +
                     h.to_string());
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t SubgroupLattice::conjugate_node(std::size_t i, Elem g) const {
  return index_of(nodes_.at(i).conjugate(g));
}

std::vector<std::pair<std::size_t, std::size_t>> SubgroupLattice::covers()
    const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) {
        continue;
      }
      bool covering = true;
      for (std::size_t c = 0; c < n && covering; ++c) {
        covering = c == a || c == b || !(leq(a, c) && leq(c, b));
      }
      if (covering) {
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

SubgroupLattice subgroup_lattice(const GroupPtr& g) {
  return SubgroupLattice(g);
}

}  // namespace ehkit
