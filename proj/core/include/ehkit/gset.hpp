#ifndef EHKIT_GSET_HPP_
#define EHKIT_GSET_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ehkit/group.hpp"

namespace ehkit {

using Point = std::uint32_t;

/// Default bound on the number of points a coinduction may materialize.
inline constexpr std::size_t kDefaultMaxPoints = 100000;

/// A finite H-set, where H is a subgroup of some ambient finite group. A G-set
/// is the case H = G. Points are 0..size-1.
class GSet {
 public:
  /// `act(g, x)` is queried for every member g of `acting`. Throws InputError
  /// if the result is not an action.
  GSet(Subgroup acting, std::size_t size,
       const std::function<Point(Elem, Point)>& act);

  static GSet empty(const Subgroup& acting);
  static GSet point(const Subgroup& acting);
  /// Left cosets acting/k; the coset k itself is point 0.
  static GSet cosets(const Subgroup& acting, const Subgroup& k);
  /// Disjoint union of the coset sets acting/k for k in `stabilizers`.
  static GSet from_orbits(const Subgroup& acting,
                          const std::vector<Subgroup>& stabilizers);

  const Subgroup& acting() const noexcept { return acting_; }
  const GroupPtr& group() const noexcept { return acting_.group(); }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  Point act(Elem g, Point x) const noexcept { return act_[g * size_ + x]; }
  Subgroup stabilizer(Point x) const;
  /// Orbits as sorted point lists, ordered by least point.
  std::vector<std::vector<Point>> orbits() const;

  bool operator==(const GSet& other) const noexcept {
    return acting_ == other.acting_ && size_ == other.size_ &&
           act_ == other.act_;
  }

 private:
  Subgroup acting_;
  std::size_t size_ = 0;
  std::vector<Point> act_;  // indexed by ambient element id; unused rows hold 0
};

/// An equivariant map between two sets over the same acting subgroup.
class GSetMap {
 public:
  /// Throws InputError on acting-group mismatch, out-of-range images or a
  /// failure of f(g x) = g f(x).
  GSetMap(GSet src, GSet dst, std::vector<Point> on_points);

  static GSetMap identity(const GSet& s);

  const GSet& src() const noexcept { return src_; }
  const GSet& dst() const noexcept { return dst_; }
  const std::vector<Point>& on_points() const noexcept { return on_points_; }
  Point operator()(Point x) const noexcept { return on_points_[x]; }

 private:
  GSet src_;
  GSet dst_;
  std::vector<Point> on_points_;
};

/// second ∘ first
GSetMap compose(const GSetMap& first, const GSetMap& second);

struct OrbitCount {
  Subgroup stabilizer;  // canonical representative of its conjugacy class
  std::size_t multiplicity;
  bool operator==(const OrbitCount&) const = default;
};

/// Orbit decomposition as a multiset of stabilizer conjugacy classes (taken
/// in the acting subgroup), sorted in canonical subgroup order.
std::vector<OrbitCount> orbit_decompose(const GSet& s);

/// Inverse of orbit_decompose: a disjoint union of coset sets.
GSet rebuild(const Subgroup& acting, const std::vector<OrbitCount>& orbits);

/// Isomorphism of H-sets (finite H-sets are classified by orbit data).
bool isomorphic(const GSet& a, const GSet& b);

GSet coproduct(const GSet& a, const GSet& b);
/// Cartesian product with the diagonal action; point (x, y) is x*|b| + y.
GSet product(const GSet& a, const GSet& b);

/// V ×_U s for s acting by U <= V. Point (i, x) is i*|s| + x where i runs over
/// left coset representatives of U in V, the identity coset first.
GSet induce(const Subgroup& v, const GSet& s);
/// Ind_U^V s → V/U; its target equals induce(v, GSet::point(U)).
GSetMap induce_structure_map(const Subgroup& v, const GSet& s);
/// Forget the action to k <= acting(s).
GSet restrict(const Subgroup& k, const GSet& s);
/// Map_U(V, s) = {φ: V → s | φ(u w) = u φ(w)} with (g φ)(w) = φ(w g).
/// Throws GuardError if the result would exceed `max_points`.
GSet coinduce(const Subgroup& v, const GSet& s,
              std::size_t max_points = kDefaultMaxPoints);
/// The gHg^-1-set with (g h g^-1)·x = h·x.
GSet conjugate(const GSet& s, Elem g);

/// Fiber product of f and g over their shared target.
struct Pullback {
  GSet apex;
  GSetMap to_left;
  GSetMap to_right;
};
/// Apex points are the pairs (t, u) with f(t) = g(u) in lexicographic order.
/// Throws InputError if the codomains differ.
Pullback pullback(const GSetMap& f, const GSetMap& g);

/// s^h; requires h <= acting(s).
std::vector<Point> fixed_points(const GSet& s, const Subgroup& h);

/// Representatives of K\G/H (least element of each double coset, ascending).
std::vector<Elem> double_cosets(const Subgroup& k, const Subgroup& h,
                                const Subgroup& g);

/// Res_U^V Ind_U^V (*_U) together with the identity coset point.
struct DistinguishedPoint {
  GSet set;
  Point point;
};
DistinguishedPoint distinguished_fixed_point(const Subgroup& u,
                                             const Subgroup& v);

/// |Hom(s, t)|: each orbit representative may go to any point of t fixed by
/// its stabilizer.
std::size_t count_homs(const GSet& s, const GSet& t);
/// All equivariant maps s → t, in lexicographic order of their images.
std::vector<GSetMap> enumerate_homs(const GSet& s, const GSet& t);

/// A span X ← R → Y of sets over the same acting subgroup.
class Span {
 public:
  /// Throws InputError unless both legs share their source.
  Span(GSetMap left, GSetMap right);

  static Span identity(const GSet& x);

  const GSetMap& left() const noexcept { return left_; }
  const GSetMap& right() const noexcept { return right_; }
  const GSet& apex() const noexcept { return left_.src(); }
  const GSet& source() const noexcept { return left_.dst(); }
  const GSet& target() const noexcept { return right_.dst(); }

 private:
  GSetMap left_;
  GSetMap right_;
};

/// (X ← R → Y) then (Y ← R' → Z) is X ← R ×_Y R' → Z.
Span compose_spans(const Span& first, const Span& second);

/// Spans are isomorphic when some isomorphism of apexes commutes with both
/// legs. Exhaustive; intended for small apexes.
bool spans_isomorphic(const Span& a, const Span& b);

}  // namespace ehkit

#endif  // EHKIT_GSET_HPP_
