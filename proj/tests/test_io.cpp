#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "ehkit/io.hpp"

using namespace ehkit;

namespace {

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos;
       pos = s.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("group specs and group JSON") {
  CHECK(parse_group_spec("cyclic:4")->order() == 4);
  CHECK(parse_group_spec("C6")->order() == 6);
  CHECK_THROWS_AS(parse_group_spec("cyclic:x"), InputError);
  CHECK_THROWS_AS(parse_group_spec("/nonexistent/group.json"), InputError);
  const GroupPtr g = cyclic_group(3);
  const GroupPtr back = group_from_json(group_to_json(*g));
  CHECK(back->table() == g->table());
  CHECK_THROWS_AS(group_from_json(Json{{"order", 2}, {"mul", {{0, 1}, {1, 1}}}}),
                  InputError);

  const std::string path = "ehkit_test_group.json";
  {
    std::ofstream out(path);
    out << group_to_json(*cyclic_group(4)).dump();
  }
  CHECK(parse_group_spec(path)->order() == 4);
  std::remove(path.c_str());
}

TEST_CASE("G-sets, maps and spans round-trip") {
  const GroupPtr g = cyclic_group(4);
  const Subgroup w = Subgroup::whole(g);
  const Subgroup c2(g, {0, 2});
  const GSet s = GSet::from_orbits(w, {c2, Subgroup::trivial(g)});
  CHECK(gset_from_json(gset_to_json(s), g) == s);
  const GSet h = GSet::from_orbits(c2, {Subgroup::trivial(g), c2});
  CHECK(gset_from_json(gset_to_json(h), g) == h);
  const GSetMap f(s, GSet::point(w), std::vector<Point>(s.size(), 0));
  const GSetMap f2 = gset_map_from_json(gset_map_to_json(f), g);
  CHECK(f2.on_points() == f.on_points());
  const Span sp(GSetMap::identity(s), f);
  const Span sp2 = span_from_json(span_to_json(sp), g);
  CHECK(spans_isomorphic(sp, sp2));
  Json broken = gset_to_json(s);
  broken["act"][1][0] = 99;
  CHECK_THROWS_AS(gset_from_json(broken, g), InputError);
}

TEST_CASE("magma and pair JSON") {
  CpUnitalMagma m;
  m.base = {2, 2, {0, 1}, 2, {0, 1}};
  m.mul_e = m.mul_G = {0, 1, 1, 0};
  m.t = {0, 0};
  const InterchangePair pair{m, m};
  CHECK(pair_from_json(pair_to_json(pair)) == pair);
  Json j = pair_to_json(pair);
  j["star"]["t"] = {0};
  CHECK_THROWS_AS(pair_from_json(j), InputError);
  Json k = pair_to_json(pair);
  k.erase("r");
  CHECK_THROWS_AS(pair_from_json(k), InputError);
  const Json sm = semi_mackey_to_json(SemiMackeyFunctor{m});
  CHECK(sm.at("mul_e").size() == 2);
}

TEST_CASE("poset output is deterministic and DOT lists covers only") {
  const ContextPtr ctx = IndexingContext::create(cyclic_group(2), 6);
  EnumerationOptions opts;
  opts.filter = Filter::almost_unital;
  const auto a = enumerate_weak_indexing_categories(ctx, opts);
  const auto b = enumerate_weak_indexing_categories(
      IndexingContext::create(cyclic_group(2), 6), opts);
  CHECK(category_poset_to_json(a).dump() == category_poset_to_json(b).dump());
  const std::string dot = category_poset_to_dot(a);
  CHECK(count_of(dot, "->") == a.covers().size());
  const auto ts = enumerate_transfer_systems(cyclic_group(4));
  CHECK(transfer_poset_to_json(ts).at("nodes").size() == 5);
  CHECK(count_of(transfer_poset_to_dot(ts), "->") >= ts.covers().size());
  const Json sys = system_poset_to_json(
      enumerate_weak_indexing_systems(ctx, opts));
  CHECK(sys.at("nodes").size() == a.size());
}

TEST_CASE("ExtInt and connectivity JSON") {
  CHECK(ext_int_to_json(ExtInt::infinity()) == "inf");
  CHECK(ext_int_to_json(ExtInt(-2)) == -2);
  const ContextPtr ctx = IndexingContext::create(cyclic_group(2), 6);
  const CategoryPosetPtr d = almost_unital_domain(ctx);
  const Json j = conn_to_json(conn_n_infty(d, trivial_category(ctx)));
  CHECK(j.size() == d->size());
  CHECK(j.at(trivial_category(ctx).fingerprint()) == "inf");
}

TEST_CASE("read_json_file reports unreadable and malformed files") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
  const std::string path = "ehkit_test_bad.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(read_json_file(path), InputError);
  std::remove(path.c_str());
}
