#include "ehkit/io.hpp"

#include <fstream>
#include <sstream>

namespace ehkit {

namespace {

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("JSON: missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("JSON: bad field '") + key + "': " + e.what());
  }
}

Json table_rows(const std::vector<Value>& flat, std::size_t n) {
  Json rows = Json::array();
  for (std::size_t a = 0; a < n; ++a) {
    rows.push_back(std::vector<Value>(flat.begin() + static_cast<long>(a * n),
                                      flat.begin() + static_cast<long>((a + 1) * n)));
  }
  return rows;
}

std::vector<Value> flatten(const Json& j, const char* key, std::size_t n) {
  const auto rows = get<std::vector<std::vector<Value>>>(j, key);
  if (rows.size() != n) {
    throw InputError(std::string("JSON: table '") + key + "' has the wrong size");
  }
  std::vector<Value> flat;
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw InputError(std::string("JSON: table '") + key + "' is not square");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

Json covers_json(const std::vector<std::pair<std::size_t, std::size_t>>& cov) {
  Json out = Json::array();
  for (const auto& [a, b] : cov) {
    out.push_back({a, b});
  }
  return out;
}

template <class T>
std::string poset_dot(const Poset<T>& p, const std::string& name,
                      const std::function<std::string(const T&)>& label) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k < p.size(); ++k) {
    os << "  n" << k << " [label=\"" << dot_escape(label(p.node(k))) << "\"];\n";
  }
  for (const auto& [a, b] : p.covers()) {
    os << "  n" << a << " -> n" << b << ";\n";
  }
  os << "}\n";
  return os.str();
}

Json fiber_json(const Level& lv, const OrbitVector& v) {
  Json orbits = Json::array();
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) {
      orbits.push_back({{"stabilizer", subgroup_to_json(lv.sub[j])},
                        {"count", v[j]}});
    }
  }
  return orbits;
}

Json admissible_json(const IndexingContext& ctx, const ClassSet& x) {
  Json levels = Json::array();
  for (std::size_t l = 0; l < ctx.levels().size(); ++l) {
    const Level& lv = ctx.level(l);
    Json sets = Json::array();
    for (std::size_t e : ctx.level_elements(l)) {
      if (x.test(e)) {
        sets.push_back(fiber_json(lv, ctx.element(e).fiber));
      }
    }
    levels.push_back({{"subgroup", subgroup_to_json(lv.rep)}, {"admissible", sets}});
  }
  return levels;
}

std::string relation_label(const TransferSystem& t) {
  const SubgroupLattice& lat = t.lattice();
  std::string s;
  for (std::size_t a = 0; a < lat.size(); ++a) {
    for (std::size_t b = 0; b < lat.size(); ++b) {
      if (a != b && t.related(a, b)) {
        s += (s.empty() ? "" : " ") + lat.node(a).to_string() + "->" +
             lat.node(b).to_string();
      }
    }
  }
  return s.empty() ? "trivial" : s;
}

}  // namespace

Json group_to_json(const FiniteGroup& g) {
  return {{"name", g.name()}, {"order", g.order()}, {"mul", g.table()}};
}

GroupPtr group_from_json(const Json& j) {
  const auto order = get<std::size_t>(j, "order");
  const auto mul = get<std::vector<std::vector<Elem>>>(j, "mul");
  const std::string name = j.contains("name") ? get<std::string>(j, "name") : "G";
  if (mul.size() != order) {
    throw InputError("group JSON: 'mul' does not have 'order' rows");
  }
  return FiniteGroup::from_table(name, mul);
}

GroupPtr parse_group_spec(const std::string& spec) {
  auto number = [&](const std::string& digits) -> std::size_t {
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos ||
        digits.size() > 4) {
      throw InputError("bad group spec '" + spec + "'");
    }
    return std::stoul(digits);
  };
  if (spec.rfind("cyclic:", 0) == 0) {
    return cyclic_group(number(spec.substr(7)));
  }
  if (spec.size() > 1 && spec[0] == 'C' &&
      spec.find_first_not_of("0123456789", 1) == std::string::npos) {
    return cyclic_group(number(spec.substr(1)));
  }
  return group_from_json(read_json_file(spec));
}

Json subgroup_to_json(const Subgroup& h) { return h.members(); }

Json gset_to_json(const GSet& s) {
  const Subgroup& h = s.acting();
  const FiniteGroup& g = h.ambient();
  Json act = Json::array();
  for (Elem x : h.members()) {
    std::vector<Point> row(s.size());
    for (Point p = 0; p < s.size(); ++p) row[p] = s.act(x, p);
    act.push_back(row);
  }
  Json out = {{"group", g.name()}, {"points", s.size()}, {"act", act}};
  if (h.order() != g.order()) {
    out["acting"] = h.members();
  }
  return out;
}

GSet gset_from_json(const Json& j, const GroupPtr& g) {
  const auto points = get<std::size_t>(j, "points");
  const auto act = get<std::vector<std::vector<Point>>>(j, "act");
  Subgroup h = j.contains("acting")
                   ? Subgroup(g, get<std::vector<Elem>>(j, "acting"))
                   : Subgroup::whole(g);
  if (act.size() != h.order()) {
    throw InputError("G-set JSON: 'act' needs one row per acting element");
  }
  std::vector<std::size_t> row_of(g->order(), 0);
  for (std::size_t k = 0; k < h.members().size(); ++k) {
    row_of[h.members()[k]] = k;
    if (act[k].size() != points) {
      throw InputError("G-set JSON: action row has the wrong length");
    }
  }
  for (const auto& row : act) {
    for (Point p : row) {
      if (p >= points) throw InputError("G-set JSON: point out of range");
    }
  }
  return GSet(h, points, [&](Elem x, Point p) { return act[row_of[x]][p]; });
}

Json gset_map_to_json(const GSetMap& f) {
  return {{"src", gset_to_json(f.src())},
          {"dst", gset_to_json(f.dst())},
          {"map", f.on_points()}};
}

GSetMap gset_map_from_json(const Json& j, const GroupPtr& g) {
  return GSetMap(gset_from_json(get<Json>(j, "src"), g),
                 gset_from_json(get<Json>(j, "dst"), g),
                 get<std::vector<Point>>(j, "map"));
}

Json span_to_json(const Span& s) {
  return {{"apex", gset_to_json(s.apex())},
          {"source", gset_to_json(s.source())},
          {"target", gset_to_json(s.target())},
          {"left", s.left().on_points()},
          {"right", s.right().on_points()}};
}

Span span_from_json(const Json& j, const GroupPtr& g) {
  const GSet apex = gset_from_json(get<Json>(j, "apex"), g);
  return Span(GSetMap(apex, gset_from_json(get<Json>(j, "source"), g),
                      get<std::vector<Point>>(j, "left")),
              GSetMap(apex, gset_from_json(get<Json>(j, "target"), g),
                      get<std::vector<Point>>(j, "right")));
}

Json category_to_json(const WeakIndexingCategory& i) {
  return {{"fingerprint", i.fingerprint()},
          {"levels", admissible_json(*i.context(), i.maps())}};
}

Json system_to_json(const WeakIndexingSystem& f) {
  return {{"fingerprint", WeakIndexingCategory(f.context(), f.admissible()).fingerprint()},
          {"levels", admissible_json(*f.context(), f.admissible())}};
}

Json transfer_system_to_json(const TransferSystem& t) {
  const SubgroupLattice& lat = t.lattice();
  Json rel = Json::array();
  for (std::size_t a = 0; a < lat.size(); ++a) {
    for (std::size_t b = 0; b < lat.size(); ++b) {
      if (a != b && t.related(a, b)) {
        rel.push_back({subgroup_to_json(lat.node(a)), subgroup_to_json(lat.node(b))});
      }
    }
  }
  return {{"transfers", rel}};
}

Json category_poset_to_json(const Poset<WeakIndexingCategory>& p) {
  Json nodes = Json::array();
  for (std::size_t k = 0; k < p.size(); ++k) {
    Json n = category_to_json(p.node(k));
    n["id"] = k;
    nodes.push_back(std::move(n));
  }
  return {{"kind", "weak_indexing_categories"},
          {"nodes", nodes},
          {"covers", covers_json(p.covers())}};
}

Json system_poset_to_json(const Poset<WeakIndexingSystem>& p) {
  Json nodes = Json::array();
  for (std::size_t k = 0; k < p.size(); ++k) {
    Json n = system_to_json(p.node(k));
    n["id"] = k;
    nodes.push_back(std::move(n));
  }
  return {{"kind", "weak_indexing_systems"},
          {"nodes", nodes},
          {"covers", covers_json(p.covers())}};
}

Json transfer_poset_to_json(const Poset<TransferSystem>& p) {
  Json nodes = Json::array();
  for (std::size_t k = 0; k < p.size(); ++k) {
    Json n = transfer_system_to_json(p.node(k));
    n["id"] = k;
    nodes.push_back(std::move(n));
  }
  return {{"kind", "transfer_systems"},
          {"nodes", nodes},
          {"covers", covers_json(p.covers())}};
}

std::string category_poset_to_dot(const Poset<WeakIndexingCategory>& p) {
  return poset_dot<WeakIndexingCategory>(
      p, "weak_indexing_categories",
      [](const WeakIndexingCategory& i) { return i.fingerprint(); });
}

std::string system_poset_to_dot(const Poset<WeakIndexingSystem>& p) {
  return poset_dot<WeakIndexingSystem>(
      p, "weak_indexing_systems", [](const WeakIndexingSystem& f) {
        return WeakIndexingCategory(f.context(), f.admissible()).fingerprint();
      });
}

std::string transfer_poset_to_dot(const Poset<TransferSystem>& p) {
  return poset_dot<TransferSystem>(p, "transfer_systems", relation_label);
}

Json magma_to_json(const CpUnitalMagma& m) {
  return {{"mul_e", table_rows(m.mul_e, m.base.size_e)},
          {"unit_e", m.unit_e},
          {"mul_G", table_rows(m.mul_G, m.base.size_G)},
          {"unit_G", m.unit_G},
          {"t", m.t}};
}

namespace {

CoefficientSystem base_from_json(const Json& j) {
  CoefficientSystem c;
  c.p = get<unsigned>(j, "p");
  c.size_e = get<std::size_t>(j, "size_e");
  c.size_G = get<std::size_t>(j, "size_G");
  c.sigma = j.contains("sigma") ? get<FnTable>(j, "sigma") : FnTable{};
  if (!j.contains("sigma")) {
    for (Value x = 0; x < c.size_e; ++x) c.sigma.push_back(x);
  }
  c.r = get<FnTable>(j, "r");
  validate_coefficient_system(c);
  return c;
}

CpUnitalMagma structure_from_json(const CoefficientSystem& base, const Json& j) {
  CpUnitalMagma m;
  m.base = base;
  m.mul_e = flatten(j, "mul_e", base.size_e);
  m.unit_e = get<Value>(j, "unit_e");
  m.mul_G = flatten(j, "mul_G", base.size_G);
  m.unit_G = get<Value>(j, "unit_G");
  m.t = get<FnTable>(j, "t");
  if (m.t.size() != base.size_e) {
    throw InputError("magma JSON: 't' has the wrong length");
  }
  for (Value v : m.t) {
    if (v >= base.size_G) throw InputError("magma JSON: 't' out of range");
  }
  for (Value v : m.mul_e) {
    if (v >= base.size_e) throw InputError("magma JSON: 'mul_e' out of range");
  }
  for (Value v : m.mul_G) {
    if (v >= base.size_G) throw InputError("magma JSON: 'mul_G' out of range");
  }
  if (m.unit_e >= base.size_e || m.unit_G >= base.size_G) {
    throw InputError("magma JSON: unit out of range");
  }
  return m;
}

Json base_json(const CoefficientSystem& c) {
  return {{"p", c.p},
          {"size_e", c.size_e},
          {"size_G", c.size_G},
          {"sigma", c.sigma},
          {"r", c.r}};
}

}  // namespace

CpUnitalMagma magma_from_json(const Json& j) {
  return structure_from_json(base_from_json(j), j);
}

Json pair_to_json(const InterchangePair& pair) {
  Json out = base_json(pair.star.base);
  out["star"] = magma_to_json(pair.star);
  out["bullet"] = magma_to_json(pair.bullet);
  return out;
}

InterchangePair pair_from_json(const Json& j) {
  const CoefficientSystem base = base_from_json(j);
  return {structure_from_json(base, get<Json>(j, "star")),
          structure_from_json(base, get<Json>(j, "bullet"))};
}

Json semi_mackey_to_json(const SemiMackeyFunctor& sm) {
  Json out = base_json(sm.structure.base);
  out.update(magma_to_json(sm.structure));
  return out;
}

Json ext_int_to_json(ExtInt v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

Json conn_to_json(const ConnFunction& f) {
  Json out = Json::object();
  for (std::size_t k = 0; k < f.values().size(); ++k) {
    out[f.domain()->node(k).fingerprint()] = ext_int_to_json(f(k));
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("cannot parse '" + path + "': " + e.what());
  }
}

}  // namespace ehkit
