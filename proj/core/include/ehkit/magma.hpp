#ifndef EHKIT_MAGMA_HPP_
#define EHKIT_MAGMA_HPP_

// C_p-unital magmas, their interchanging pairs and semi-Mackey functors, all as
// explicit operation tables on carriers {0, ..., n-1}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ehkit/error.hpp"
#include "ehkit/gset.hpp"

namespace ehkit {

using Value = std::uint32_t;
/// Flat n×n operation table: a·b is table[a * n + b].
using Table = std::vector<Value>;
/// A function between finite carriers, as its list of images.
using FnTable = std::vector<Value>;

/// How "r ∘ t is multiplication by p" is read: the left-associated p-fold
/// product x·x·...·x, or the norm x·σx·...·σ^{p-1}x.
enum class PowerReading { literal, norm };

const char* to_string(PowerReading r);

/// M^e with its C_p-action (generator σ), M^{C_p}, and r: M^{C_p} → M^e.
struct CoefficientSystem {
  unsigned p = 2;
  std::size_t size_e = 1;
  FnTable sigma{0};  // action of the generator on M^e
  std::size_t size_G = 1;
  FnTable r{0};

  /// σ^k · x
  Value act(unsigned k, Value x) const;
  bool operator==(const CoefficientSystem&) const = default;
};

/// Throws InputError on a malformed system: p not prime, tables of the wrong
/// size or range, σ^p ≠ id, or r not landing in the fixed points.
void validate_coefficient_system(const CoefficientSystem& c);

struct CpUnitalMagma {
  CoefficientSystem base;
  Table mul_e{0};
  Value unit_e = 0;
  Table mul_G{0};
  Value unit_G = 0;
  FnTable t{0};

  Value me(Value a, Value b) const { return mul_e[a * base.size_e + b]; }
  Value mg(Value a, Value b) const { return mul_G[a * base.size_G + b]; }
  bool operator==(const CpUnitalMagma&) const = default;
};

/// Trivial magma: one point at both levels.
CpUnitalMagma trivial_magma(unsigned p);

/// Left-associated p-fold product of x at level e.
Value power_e(const CpUnitalMagma& m, Value x);
/// x · σx · ... · σ^{p-1}x, left-associated.
Value norm_e(const CpUnitalMagma& m, Value x);

/// Every axiom checked exhaustively; names the first failure.
ValidityReport validate_magma(const CpUnitalMagma& m,
                              PowerReading reading = PowerReading::literal);

/// A pair of level maps F^e: M^e → N^e, F^G: M^{C_p} → N^{C_p}.
struct MagmaMap {
  FnTable on_e;
  FnTable on_G;
  bool operator==(const MagmaMap&) const = default;
  auto operator<=>(const MagmaMap&) const = default;
};

ValidityReport check_homomorphism(const MagmaMap& f, const CpUnitalMagma& m,
                                  const CpUnitalMagma& n);
bool is_homomorphism(const MagmaMap& f, const CpUnitalMagma& m,
                     const CpUnitalMagma& n);
/// second ∘ first
MagmaMap compose(const MagmaMap& first, const MagmaMap& second);
MagmaMap identity_map(const CpUnitalMagma& m);

/// Two magma structures on one coefficient system.
struct InterchangePair {
  CpUnitalMagma star;
  CpUnitalMagma bullet;
  bool operator==(const InterchangePair&) const = default;
};

/// The shared-unit relation plus the interchange diagrams: binary interchange
/// at both levels, t_• a ∗-homomorphism, t_∗ a •-homomorphism, and the mixed
/// squares r∘t_• = ∗-power, r∘t_∗ = •-power (norms under the norm reading).
/// With `transfer_interchange`, also t_•(x_1∗⋯∗x_p) = t_∗(x_1•⋯•x_p), the
/// relation between the two C_p/e-indexed operations; without it the check
/// admits pairs with t_∗ ≠ t_•.
ValidityReport check_interchange(const InterchangePair& pair,
                                 PowerReading reading = PowerReading::literal,
                                 bool transfer_interchange = true);

/// A semi-Mackey functor for C_p: commutative monoids at both levels with
/// restriction and transfer obeying the double-coset law.
struct SemiMackeyFunctor {
  CpUnitalMagma structure;
  bool operator==(const SemiMackeyFunctor&) const = default;
};

/// Collapses an interchanging pair. Throws InputError if the pair fails
/// check_interchange and TheoremViolation if any consequence of the
/// Eckmann-Hilton argument fails on it.
SemiMackeyFunctor eckmann_hilton(const InterchangePair& pair,
                                 PowerReading reading = PowerReading::literal);

/// star = bullet = the functor's structure. Throws InputError if sm is invalid.
InterchangePair pair_of_semi_mackey(const SemiMackeyFunctor& sm);

/// Monoid axioms, homomorphism and equivariance laws, then the double-coset
/// law evaluated through span composition in the Burnside category.
ValidityReport semi_mackey_check(const SemiMackeyFunctor& sm);

/// Value of a span X ← R → Y of C_p-sets, X and Y single orbits, on one
/// element of M(X). Restriction along an orbit map is applied first, then
/// transfer; components over distinct orbits of R are multiplied.
Value evaluate_span(const SemiMackeyFunctor& sm, const Span& span, Value x);

/// The spans C_p/e → ∗ (transfer) and ∗ ← C_p/e (restriction).
Span transfer_span(unsigned p);
Span restriction_span(unsigned p);

/// Fixed-point functor of a finite commutative monoid N: both levels N,
/// trivial action, r = id, t(x) = x^p.
SemiMackeyFunctor fixed_point_functor(unsigned p, std::size_t n,
                                      const Table& mul, Value unit);

// --- Isomorphism classes and enumeration -------------------------------------

/// Least relabeling of carriers (units sent to 0). Two pairs are isomorphic iff
/// their canonical forms are equal. Throws GuardError past size 6.
InterchangePair canonical_form(const InterchangePair& pair);
SemiMackeyFunctor canonical_form(const SemiMackeyFunctor& sm);

struct SweepBounds {
  unsigned p = 2;
  std::size_t max_e = 2;
  std::size_t max_G = 2;
  /// Upper limit on candidate structures examined; GuardError beyond it.
  std::size_t max_candidates = 50'000'000;
};

/// All interchanging pairs up to isomorphism, in canonical-form order.
std::vector<InterchangePair> enumerate_interchanging_pairs(
    const SweepBounds& bounds, PowerReading reading = PowerReading::literal);
/// All semi-Mackey functors up to isomorphism, found independently.
std::vector<SemiMackeyFunctor> enumerate_semi_mackey(const SweepBounds& bounds);

/// All homomorphisms m → n (for pairs: of both structures at once).
std::vector<MagmaMap> enumerate_homs(const CpUnitalMagma& m,
                                     const CpUnitalMagma& n);
std::vector<MagmaMap> enumerate_homs(const InterchangePair& m,
                                     const InterchangePair& n);

/// Outcome of a Theorem-A sweep over a list of pairs.
struct SweepReport {
  std::size_t pairs = 0;
  std::size_t functors = 0;
  std::size_t violations = 0;
  bool bijection = false;
  bool homs_match = false;
  std::string first_violation;
};

/// Runs eckmann_hilton on every pair, matches the results against an
/// independent semi-Mackey enumeration and compares homomorphism sets.
SweepReport eh_sweep(const SweepBounds& bounds,
                     PowerReading reading = PowerReading::literal);

}  // namespace ehkit

#endif  // EHKIT_MAGMA_HPP_
