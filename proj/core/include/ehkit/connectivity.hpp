#ifndef EHKIT_CONNECTIVITY_HPP_
#define EHKIT_CONNECTIVITY_HPP_

// Connectivity functions on the almost-unital weak indexing poset, the LEHA
// inequality for N∞ tensor products, and connectivity of little V-disks.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ehkit/gset.hpp"
#include "ehkit/windex.hpp"

namespace ehkit {

/// Z ∪ {+∞}; addition absorbs ∞.
class ExtInt {
 public:
  constexpr ExtInt() = default;
  constexpr ExtInt(std::int64_t v) : value_(v) {}  // NOLINT: implicit by design
  static constexpr ExtInt infinity() {
    ExtInt x;
    x.inf_ = true;
    return x;
  }

  constexpr bool is_infinite() const noexcept { return inf_; }
  /// Throws InputError on ∞.
  std::int64_t value() const;

  friend constexpr ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtInt(a.value_ + b.value_);
  }
  friend constexpr bool operator==(ExtInt a, ExtInt b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(ExtInt a, ExtInt b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  std::int64_t value_ = 0;
  bool inf_ = false;
};

using CategoryPoset = Poset<WeakIndexingCategory>;
using CategoryPosetPtr = std::shared_ptr<const CategoryPoset>;

/// The enumerated almost-unital poset of a context.
CategoryPosetPtr almost_unital_domain(const ContextPtr& ctx,
                                      std::size_t jobs = 1);

/// Index of a category in the domain. Throws InputError if absent.
std::size_t domain_index(const CategoryPoset& domain,
                         const WeakIndexingCategory& i);

/// An ExtInt per node of a domain poset.
class ConnFunction {
 public:
  ConnFunction(CategoryPosetPtr domain, std::vector<ExtInt> values);

  const CategoryPosetPtr& domain() const noexcept { return domain_; }
  const std::vector<ExtInt>& values() const noexcept { return values_; }
  ExtInt operator()(std::size_t node) const { return values_.at(node); }
  bool operator==(const ConnFunction& o) const {
    return domain_ == o.domain_ && values_ == o.values_;
  }

 private:
  CategoryPosetPtr domain_;
  std::vector<ExtInt> values_;
};

ConnFunction constant_conn(const CategoryPosetPtr& domain, ExtInt v);
/// J ↦ ∞ if J ⊆ i, −2 otherwise. Throws InputError unless i is almost unital.
ConnFunction conn_n_infty(const CategoryPosetPtr& domain,
                          const WeakIndexingCategory& i);
/// Pointwise sum. Throws InputError on different domains.
ConnFunction conn_add(const ConnFunction& f, const ConnFunction& g);
ConnFunction conn_shift(const ConnFunction& f, std::int64_t k);
/// Pointwise f <= g.
bool conn_leq(const ConnFunction& f, const ConnFunction& g);

struct LehaReport {
  bool holds = false;
  /// Domain nodes where Conn_i + Conn_j + 2 < Conn_{i∨j}.
  std::vector<std::size_t> strict_witnesses;
  /// down(i∨j) \ (down(i) ∪ down(j)), computed from the order alone.
  std::vector<std::size_t> predicted;
  std::size_t join_node = 0;
};

/// Conn_{N_i} + Conn_{N_j} + 2 <= Conn_{N_{i∨j}}, with the join taken in the
/// almost-unital class.
LehaReport leha_check(const CategoryPosetPtr& domain,
                      const WeakIndexingCategory& i,
                      const WeakIndexingCategory& j);

// --- Little V-disks ---------------------------------------------------------------

/// dim V^H for every subgroup H of G (lattice node order).
class RepDimension {
 public:
  RepDimension(std::shared_ptr<const SubgroupLattice> lattice,
               std::vector<std::size_t> dims);
  /// a + bσ over C_2: dim^e = a + b, dim^{C_2} = a.
  static RepDimension c2(std::size_t a, std::size_t b);

  const SubgroupLattice& lattice() const noexcept { return *lattice_; }
  const std::shared_ptr<const SubgroupLattice>& lattice_ptr() const noexcept {
    return lattice_;
  }
  std::size_t dim(std::size_t node) const { return dims_.at(node); }
  std::size_t dim(const Subgroup& h) const;

 private:
  std::shared_ptr<const SubgroupLattice> lattice_;
  std::vector<std::size_t> dims_;
};

/// A C_2-set k·∗_e over the trivial subgroup, or c·∗_{C_2} + d·[C_2/e].
struct C2Set {
  bool at_e = false;
  std::size_t k = 0;
  std::size_t c = 0;
  std::size_t d = 0;

  static C2Set level_e(std::size_t k) { return {true, k, 0, 0}; }
  static C2Set level_c2(std::size_t c, std::size_t d) { return {false, 0, c, d}; }
  std::string to_string() const;
};

/// The cased formula for Conn_{E_{a+bσ}}(S), floored at −2; ∞ when every
/// fixed-point set of S has at most one point.
ExtInt e_v_conn_c2(std::size_t a, std::size_t b, const C2Set& s);

/// The C_2-set (or e-set) described by s, over the given group.
GSet c2_gset(const GroupPtr& c2, const C2Set& s);

/// Is E_V ℓ-connected at I_S ∨ I^0 (conditions (a) and (b)). Condition (a)
/// is read as dim V^K ≥ dim V^J + ℓ + 2 for K ⊊ J ⊆ H.
bool e_v_conn_general(const RepDimension& v, const GSet& s, std::int64_t ell);

struct EvConnReport {
  ExtInt value;
  /// Number of constraints on ℓ; zero means the value ∞ is vacuous.
  std::size_t constraints = 0;
};
/// Largest ℓ passing e_v_conn_general, floored at −2; ∞ when unconstrained.
EvConnReport e_v_conn_value(const RepDimension& v, const GSet& s);

struct NonAdditivityReport {
  ExtInt lhs_bound;  // Conn_{1+bσ}(S) + Conn_{a'+σ}(S) + 2
  ExtInt rhs;        // Conn_{a'+1+(b+1)σ}(S)
  bool strict = false;
  /// Additivity of E_V under tensor products is taken from forthcoming work.
  std::string provenance = "forthcoming";
};

/// S = 2∗_{C_2} + [C_2/e]. Throws InputError unless a', b > 1.
NonAdditivityReport non_additivity_witness(std::size_t a_prime, std::size_t b);

}  // namespace ehkit

#endif  // EHKIT_CONNECTIVITY_HPP_
