#include <doctest.h>

#include <algorithm>

#include "ehkit/connectivity.hpp"

using namespace ehkit;

namespace {

// Least node above both, found by scanning the domain.
std::size_t brute_join(const CategoryPoset& d, std::size_t a, std::size_t b) {
  std::vector<std::size_t> uppers;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d.leq(a, k) && d.leq(b, k)) uppers.push_back(k);
  }
  for (std::size_t u : uppers) {
    if (std::all_of(uppers.begin(), uppers.end(),
                    [&](std::size_t v) { return d.leq(u, v); })) {
      return u;
    }
  }
  return d.size();
}

}  // namespace

TEST_CASE("ExtInt arithmetic and order") {
  const ExtInt inf = ExtInt::infinity();
  CHECK((inf + ExtInt(-5)).is_infinite());
  CHECK(ExtInt(3) + ExtInt(-5) == ExtInt(-2));
  CHECK(ExtInt(1000) < inf);
  CHECK(inf == inf);
  CHECK_FALSE(ExtInt(2) == inf);
  CHECK_THROWS_AS(inf.value(), InputError);
  CHECK(inf.to_string() == "inf");
  CHECK(ExtInt(-2).to_string() == "-2");
}

TEST_CASE("connectivity functions of N_infinity operads") {
  const ContextPtr ctx = IndexingContext::create(cyclic_group(2), 6);
  const CategoryPosetPtr d = almost_unital_domain(ctx);
  REQUIRE(d->size() == 9);
  const auto comp = complete_category(ctx);
  const ConnFunction f = conn_n_infty(d, comp);
  for (std::size_t k = 0; k < d->size(); ++k) CHECK(f(k).is_infinite());
  const ConnFunction t = conn_n_infty(d, trivial_category(ctx));
  const std::size_t bottom = domain_index(*d, trivial_category(ctx));
  CHECK(t(bottom).is_infinite());
  for (std::size_t k = 0; k < d->size(); ++k) {
    if (k != bottom) CHECK(t(k) == ExtInt(-2));
  }
  CHECK(conn_leq(t, f));
  CHECK_FALSE(conn_leq(f, t));
  CHECK(conn_shift(constant_conn(d, 0), 2) == constant_conn(d, 2));
  CHECK(conn_add(t, f) == f);
  // non almost-unital input is rejected
  const Subgroup e = Subgroup::trivial(ctx->group());
  const auto n1 = generate_windex(
      ctx, {induce_structure_map(Subgroup::whole(ctx->group()),
                                 GSet::from_orbits(e, {e, e}))});
  CHECK_THROWS_AS(conn_n_infty(d, n1), InputError);
  CHECK_THROWS_AS(domain_index(*d, n1), InputError);
  const CategoryPosetPtr other = almost_unital_domain(ctx);
  CHECK_THROWS_AS(conn_add(t, conn_n_infty(other, trivial_category(ctx))), InputError);
}

TEST_CASE("LEHA: inequality and exact strict witnesses on C2 and C4") {
  for (std::size_t n : {2, 4}) {
    const ContextPtr ctx = IndexingContext::create(cyclic_group(n), 3 * n);
    const CategoryPosetPtr d = almost_unital_domain(ctx);
    for (std::size_t a = 0; a < d->size(); ++a) {
      for (std::size_t b = 0; b < d->size(); ++b) {
        const LehaReport rep = leha_check(d, d->node(a), d->node(b));
        CHECK(rep.holds);
        CHECK(rep.join_node == brute_join(*d, a, b));
        // strict exactly where the join is infinite and neither factor is
        std::vector<std::size_t> expect;
        for (std::size_t k = 0; k < d->size(); ++k) {
          const bool in_join = d->node(k).is_subset_of(d->node(rep.join_node));
          const bool in_a = d->node(k).is_subset_of(d->node(a));
          const bool in_b = d->node(k).is_subset_of(d->node(b));
          if (in_join && !in_a && !in_b) expect.push_back(k);
        }
        CHECK(rep.strict_witnesses == expect);
        CHECK(rep.predicted == expect);
      }
    }
  }
}

TEST_CASE("E_V over C2: the cased formula") {
  // a + b - 2 at k*_e
  CHECK(e_v_conn_c2(1, 2, C2Set::level_e(3)) == ExtInt(1));
  // a - 2 when d = 0
  CHECK(e_v_conn_c2(3, 1, C2Set::level_c2(2, 0)) == ExtInt(1));
  // b - 2 when d >= 1, c < 2
  CHECK(e_v_conn_c2(3, 1, C2Set::level_c2(1, 1)) == ExtInt(-1));
  // min(a, b) - 2 otherwise
  CHECK(e_v_conn_c2(1, 2, C2Set::level_c2(2, 1)) == ExtInt(-1));
  CHECK(e_v_conn_c2(0, 0, C2Set::level_c2(2, 1)) == ExtInt(-2));
  // one point or none: contractible
  CHECK(e_v_conn_c2(2, 2, C2Set::level_e(1)).is_infinite());
  CHECK(e_v_conn_c2(2, 2, C2Set::level_c2(1, 0)).is_infinite());
}

TEST_CASE("E_V: the general criterion agrees with the cased formula") {
  const GroupPtr c2 = cyclic_group(2);
  for (std::size_t a = 0; a <= 4; ++a) {
    for (std::size_t b = 0; b <= 4; ++b) {
      const RepDimension v = RepDimension::c2(a, b);
      for (std::size_t k = 0; k <= 4; ++k) {
        const C2Set s = C2Set::level_e(k);
        const EvConnReport rep = e_v_conn_value(v, c2_gset(c2, s));
        CHECK(rep.value == e_v_conn_c2(a, b, s));
        if (k <= 1) {
          CHECK(rep.constraints == 0);
          CHECK(rep.value.is_infinite());
        }
      }
      for (std::size_t c = 0; c <= 3; ++c) {
        for (std::size_t dd = 0; dd <= 3; ++dd) {
          const C2Set s = C2Set::level_c2(c, dd);
          const EvConnReport rep = e_v_conn_value(v, c2_gset(c2, s));
          CHECK(rep.value == e_v_conn_c2(a, b, s));
          // the boolean criterion is monotone in ℓ and matches the value
          if (!rep.value.is_infinite() && rep.value.value() > -2) {
            CHECK(e_v_conn_general(v, c2_gset(c2, s), rep.value.value()));
            CHECK_FALSE(e_v_conn_general(v, c2_gset(c2, s), rep.value.value() + 1));
          }
        }
      }
    }
  }
}

TEST_CASE("E_V non-additivity witness") {
  const NonAdditivityReport rep = non_additivity_witness(2, 2);
  CHECK(rep.lhs_bound == ExtInt(0));
  CHECK(rep.rhs == ExtInt(1));
  CHECK(rep.strict);
  CHECK(rep.provenance == "forthcoming");
  for (std::size_t a = 2; a <= 6; ++a) {
    for (std::size_t b = 2; b <= 6; ++b) {
      const auto r = non_additivity_witness(a, b);
      CHECK(r.lhs_bound == ExtInt(0));
      CHECK(r.rhs == ExtInt(static_cast<std::int64_t>(std::min(a, b)) - 1));
      CHECK(r.strict);
    }
  }
  CHECK_THROWS_AS(non_additivity_witness(1, 5), InputError);
}

TEST_CASE("RepDimension over larger groups") {
  const auto lat = std::make_shared<const SubgroupLattice>(cyclic_group(4));
  CHECK_THROWS_AS(RepDimension(lat, {3, 2}), InputError);
  // dims 5 ≥ 3 ≥ 1 on e < C2 < C4; S = 2*_{C4}: fixed points give dim V^{C4} - 2
  const RepDimension v(lat, {5, 3, 1});
  const Subgroup w = Subgroup::whole(lat->group());
  const GSet s = GSet::from_orbits(w, {w, w});
  CHECK(e_v_conn_value(v, s).value == ExtInt(-1));
  // a free orbit adds e < C2 and e < C4: bounds 5-3-2 = 0 and 5-1-2 = 2
  const GSet t = GSet::from_orbits(w, {w, w, Subgroup::trivial(lat->group())});
  CHECK(e_v_conn_value(v, t).value == ExtInt(-1));
  const GSet u = GSet::from_orbits(w, {Subgroup::trivial(lat->group())});
  CHECK(e_v_conn_value(v, u).value == ExtInt(0));
}
