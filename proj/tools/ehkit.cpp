// ehkit: enumerate weak indexing posets, run Eckmann-Hilton checks and
// connectivity reports.
//
// Exit codes: 0 success, 1 input error, 2 resource guard, 3 theorem violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ehkit/connectivity.hpp"
#include "ehkit/io.hpp"
#include "ehkit/magma.hpp"
#include "ehkit/windex.hpp"

namespace {

using namespace ehkit;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitGuard = 2;
constexpr int kExitViolation = 3;

struct RunConfig {
  std::string group = "cyclic:2";
  std::size_t cutoff = 0;  // 0 means 3·|G|
  std::string filter = "all";
  std::string output;
  std::string format = "json";
  std::size_t max_objects = 200000;
  std::size_t max_carrier = 3;
  std::size_t max_candidates = 50'000'000;
  bool norm_axiom = false;
  std::size_t jobs = 1;
};

ContextPtr make_context(const RunConfig& cfg) {
  const GroupPtr g = parse_group_spec(cfg.group);
  return IndexingContext::create(g, cfg.cutoff == 0 ? default_cutoff(g)
                                                    : cfg.cutoff);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) {
    throw InputError("cannot write '" + cfg.output + "'");
  }
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --- enumerate ------------------------------------------------------------------

std::string category_text(const Poset<WeakIndexingCategory>& p) {
  std::ostringstream os;
  os << p.size() << " nodes\n";
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto& i = p.node(k);
    os << k << " " << i.fingerprint() << " ";
    bool first = true;
    for (std::size_t c : i.maps().indices()) {
      os << (first ? "" : " ") << i.context()->describe(c);
      first = false;
    }
    os << "\n";
  }
  for (auto [a, b] : p.covers()) {
    os << a << " < " << b << "\n";
  }
  return os.str();
}

std::string transfer_text(const Poset<TransferSystem>& p) {
  std::ostringstream os;
  os << p.size() << " nodes\n";
  for (std::size_t k = 0; k < p.size(); ++k) {
    const TransferSystem& t = p.node(k);
    const SubgroupLattice& lat = t.lattice();
    os << k << " {";
    bool first = true;
    for (std::size_t a = 0; a < lat.size(); ++a) {
      for (std::size_t b = 0; b < lat.size(); ++b) {
        if (a != b && t.related(a, b)) {
          os << (first ? "" : ", ") << lat.node(a).to_string() << "->"
             << lat.node(b).to_string();
          first = false;
        }
      }
    }
    os << "}\n";
  }
  for (auto [a, b] : p.covers()) {
    os << a << " < " << b << "\n";
  }
  return os.str();
}

int cmd_enumerate(const RunConfig& cfg, bool transfer_systems) {
  std::size_t count = 0;
  std::string text;
  if (transfer_systems) {
    const auto p = enumerate_transfer_systems(parse_group_spec(cfg.group));
    count = p.size();
    if (cfg.format == "dot") {
      text = transfer_poset_to_dot(p);
    } else if (cfg.format == "text") {
      text = transfer_text(p);
    } else {
      text = dump(transfer_poset_to_json(p));
    }
  } else {
    EnumerationOptions opts;
    opts.filter = parse_filter(cfg.filter);
    opts.jobs = cfg.jobs;
    opts.max_objects = cfg.max_objects;
    const auto p = enumerate_weak_indexing_categories(make_context(cfg), opts);
    count = p.size();
    if (cfg.format == "dot") {
      text = category_poset_to_dot(p);
    } else if (cfg.format == "text") {
      text = category_text(p);
    } else {
      text = dump(category_poset_to_json(p));
    }
  }
  emit(cfg, text);
  if (!cfg.output.empty()) {
    std::cout << count << " nodes\n";
  }
  return kExitOk;
}

// --- eh-check ---------------------------------------------------------------------

int cmd_eh_check(const RunConfig& cfg, const std::string& pair_file,
                 const std::vector<std::size_t>& sweep, unsigned p,
                 bool displayed_only) {
  const PowerReading reading =
      cfg.norm_axiom ? PowerReading::norm : PowerReading::literal;
  if (!sweep.empty()) {
    if (sweep.size() != 2) {
      throw InputError("--sweep takes two carrier sizes");
    }
    if (sweep[0] > cfg.max_carrier || sweep[1] > cfg.max_carrier) {
      throw GuardError("carrier size beyond --max-carrier");
    }
    SweepBounds b;
    b.p = p;
    b.max_e = sweep[0];
    b.max_G = sweep[1];
    b.max_candidates = cfg.max_candidates;
    const SweepReport rep = eh_sweep(b, reading);
    Json j = {{"p", p},
              {"max_e", b.max_e},
              {"max_G", b.max_G},
              {"reading", to_string(reading)},
              {"pairs", rep.pairs},
              {"semi_mackey", rep.functors},
              {"violations", rep.violations},
              {"bijection", rep.bijection},
              {"homs_match", rep.homs_match}};
    if (!rep.first_violation.empty()) {
      j["first_violation"] = rep.first_violation;
    }
    if (cfg.format == "text") {
      std::ostringstream os;
      os << "pairs " << rep.pairs << ", semi-Mackey functors " << rep.functors
         << ", violations " << rep.violations << ", bijection "
         << (rep.bijection ? "yes" : "no") << ", homs "
         << (rep.homs_match ? "match" : "differ") << "\n";
      if (!rep.first_violation.empty()) {
        os << "first violation: " << rep.first_violation << "\n";
      }
      emit(cfg, os.str());
    } else {
      emit(cfg, dump(j));
    }
    return rep.violations == 0 ? kExitOk : kExitViolation;
  }
  if (pair_file.empty()) {
    throw InputError("eh-check needs a pair file or --sweep");
  }
  const InterchangePair pair = pair_from_json(read_json_file(pair_file));
  const ValidityReport pre = check_interchange(pair, reading, !displayed_only);
  if (!pre) {
    std::cerr << "REJECT: " << pre.axiom << " (" << pre.witness << ")\n";
    return kExitInput;
  }
  if (displayed_only) {
    // Without the transfer relation the collapse may legitimately fail; a
    // failure here is still reported as a violation of the claimed collapse.
    const ValidityReport full = check_interchange(pair, reading, true);
    if (!full) {
      std::cerr << "FAIL: collapse does not follow from the displayed "
                   "relations: "
                << full.axiom << " (" << full.witness << ")\n";
      return kExitViolation;
    }
  }
  const SemiMackeyFunctor sm = eckmann_hilton(pair, reading);
  Json j = {{"verdict", "PASS"}, {"semi_mackey", semi_mackey_to_json(sm)}};
  if (cfg.format == "text") {
    emit(cfg, "PASS\n");
  } else {
    emit(cfg, dump(j));
  }
  return kExitOk;
}

// --- conn -------------------------------------------------------------------------

std::size_t resolve_node(const CategoryPoset& domain, const ContextPtr& ctx,
                         const std::string& spec) {
  if (spec == "trivial") return domain_index(domain, trivial_category(ctx));
  if (spec == "complete") return domain_index(domain, complete_category(ctx));
  if (spec == "infinity") return domain_index(domain, infinity_category(ctx));
  for (std::size_t k = 0; k < domain.size(); ++k) {
    if (domain.node(k).fingerprint() == spec) return k;
  }
  if (!spec.empty() && spec.find_first_not_of("0123456789") == std::string::npos) {
    const std::size_t k = std::stoul(spec);
    if (k < domain.size()) return k;
  }
  throw InputError("unknown node '" + spec +
                   "' (use an index, a fingerprint, trivial, complete or "
                   "infinity)");
}

Json fingerprints(const CategoryPoset& domain,
                  const std::vector<std::size_t>& nodes) {
  Json out = Json::array();
  for (std::size_t k : nodes) out.push_back(domain.node(k).fingerprint());
  return out;
}

int conn_pairs(const RunConfig& cfg, const std::string& i_spec,
               const std::string& j_spec, bool all_pairs) {
  const ContextPtr ctx = make_context(cfg);
  const CategoryPosetPtr domain = almost_unital_domain(ctx, cfg.jobs);
  if (all_pairs) {
    std::size_t fails = 0;
    std::size_t unsharp = 0;
    std::string first;
    for (std::size_t a = 0; a < domain->size(); ++a) {
      for (std::size_t b = 0; b < domain->size(); ++b) {
        const LehaReport rep = leha_check(domain, domain->node(a), domain->node(b));
        if (!rep.holds || rep.strict_witnesses != rep.predicted) {
          (rep.holds ? unsharp : fails) += 1;
          if (first.empty()) {
            first = std::to_string(a) + "," + std::to_string(b);
          }
        }
      }
    }
    const std::size_t pairs = domain->size() * domain->size();
    Json j = {{"group", ctx->group()->name()},
              {"cutoff", ctx->cutoff()},
              {"nodes", domain->size()},
              {"pairs", pairs},
              {"failures", fails},
              {"witness_mismatches", unsharp}};
    if (!first.empty()) j["first_bad_pair"] = first;
    if (cfg.format == "json") {
      emit(cfg, dump(j));
    } else {
      std::ostringstream os;
      os << "LEHA over " << domain->size() << " almost-unital nodes, " << pairs
         << " pairs: " << (fails == 0 ? "holds for all pairs" : "FAILS")
         << "; strict witnesses "
         << (unsharp == 0 ? "match down(i v j) minus down(i) u down(j)"
                          : "MISMATCH")
         << "\n";
      emit(cfg, os.str());
    }
    return fails == 0 && unsharp == 0 ? kExitOk : kExitViolation;
  }
  const std::size_t a = resolve_node(*domain, ctx, i_spec);
  const std::size_t b = resolve_node(*domain, ctx, j_spec);
  const auto& i = domain->node(a);
  const auto& jj = domain->node(b);
  const LehaReport rep = leha_check(domain, i, jj);
  const bool sharp = rep.strict_witnesses == rep.predicted;
  Json j = {{"i", i.fingerprint()},
            {"j", jj.fingerprint()},
            {"join", domain->node(rep.join_node).fingerprint()},
            {"holds", rep.holds},
            {"strict_witnesses", fingerprints(*domain, rep.strict_witnesses)},
            {"predicted", fingerprints(*domain, rep.predicted)},
            {"conn_i", conn_to_json(conn_n_infty(domain, i))},
            {"conn_j", conn_to_json(conn_n_infty(domain, jj))},
            {"conn_join",
             conn_to_json(conn_n_infty(domain, domain->node(rep.join_node)))}};
  if (cfg.format == "json") {
    emit(cfg, dump(j));
  } else {
    std::ostringstream os;
    os << "Conn_i + Conn_j + 2 <= Conn_(i v j): " << (rep.holds ? "holds" : "FAILS")
       << "\n";
    os << "join " << domain->node(rep.join_node).fingerprint() << "\n";
    os << "strict at " << rep.strict_witnesses.size() << " nodes";
    for (std::size_t k : rep.strict_witnesses) {
      os << " " << domain->node(k).fingerprint();
    }
    os << "\npredicted " << (sharp ? "exactly" : "DIFFERENTLY") << "\n";
    emit(cfg, os.str());
  }
  return rep.holds && sharp ? kExitOk : kExitViolation;
}

C2Set parse_c2_set(const std::string& set, std::optional<std::size_t> set_e) {
  if (set_e) {
    return C2Set::level_e(*set_e);
  }
  const auto comma = set.find(',');
  if (comma == std::string::npos) {
    throw InputError("--set expects c,d");
  }
  try {
    return C2Set::level_c2(std::stoul(set.substr(0, comma)),
                           std::stoul(set.substr(comma + 1)));
  } catch (const std::logic_error&) {
    throw InputError("--set expects two non-negative integers c,d");
  }
}

int conn_ev(const RunConfig& cfg, std::size_t a, std::size_t b, const C2Set& s) {
  const ExtInt table = e_v_conn_c2(a, b, s);
  const GroupPtr c2 = cyclic_group(2);
  const EvConnReport gen = e_v_conn_value(RepDimension::c2(a, b), c2_gset(c2, s));
  const bool agree = gen.constraints == 0 || gen.value == table;
  if (cfg.format == "json") {
    emit(cfg, dump({{"a", a},
                    {"b", b},
                    {"set", s.to_string()},
                    {"value", ext_int_to_json(table)},
                    {"general", ext_int_to_json(gen.value)},
                    {"constraints", gen.constraints}}));
  } else {
    std::ostringstream os;
    os << table.to_string() << "\n";
    emit(cfg, os.str());
  }
  return agree ? kExitOk : kExitViolation;
}

int conn_witness(const RunConfig& cfg, std::size_t a_prime, std::size_t b) {
  const NonAdditivityReport rep = non_additivity_witness(a_prime, b);
  if (cfg.format == "json") {
    emit(cfg, dump({{"lhs", ext_int_to_json(rep.lhs_bound)},
                    {"rhs", ext_int_to_json(rep.rhs)},
                    {"strict", rep.strict},
                    {"provenance", rep.provenance}}));
  } else {
    emit(cfg, "lhs " + rep.lhs_bound.to_string() +
                  (rep.strict ? " < " : " >= ") + "rhs " + rep.rhs.to_string() +
                  " (tensor additivity: " + rep.provenance + ")\n");
  }
  return rep.strict ? kExitOk : kExitViolation;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--group", cfg.group, "cyclic:n, Cn, or a group table JSON file");
  sub->add_option("--cutoff", cfg.cutoff, "Size cutoff (default 3|G|)");
  sub->add_option("--output,-o", cfg.output, "Output file (default stdout)");
  sub->add_option("--jobs", cfg.jobs, "Worker threads")
      ->envname("EHKIT_JOBS")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak indexing categories, Eckmann-Hilton checks and connectivity"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* en = app.add_subcommand("enumerate", "Enumerate a poset of weak indexing categories");
  add_common(en, cfg);
  bool transfer_systems = false;
  en->add_option("--filter", cfg.filter, "all, unital or almost_unital")
      ->check(CLI::IsMember({"all", "unital", "almost_unital", "almost-unital"}));
  en->add_flag("--transfer-systems", transfer_systems, "Enumerate transfer systems");
  en->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
  en->add_option("--max-objects", cfg.max_objects, "Guard on enumerated objects")
      ->check(CLI::PositiveNumber);

  auto* eh = app.add_subcommand("eh-check", "Check an interchanging pair or sweep all of them");
  std::string pair_file;
  std::vector<std::size_t> sweep;
  unsigned p = 2;
  bool displayed_only = false;
  eh->add_option("pair", pair_file, "Pair JSON file");
  eh->add_option("--sweep", sweep, "Carrier bounds |M^e| |M^G|")->expected(2);
  eh->add_option("--p", p, "Prime");
  eh->add_flag("--norm-axiom", cfg.norm_axiom, "Read r(t(x)) as the norm");
  eh->add_flag("--displayed-only", displayed_only,
               "Check only the displayed interchange relations");
  eh->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  eh->add_option("--output,-o", cfg.output, "Output file (default stdout)");
  eh->add_option("--max-carrier", cfg.max_carrier, "Largest carrier in a sweep")->check(CLI::PositiveNumber);
  eh->add_option("--max-candidates", cfg.max_candidates, "Guard on sweep candidates")->check(CLI::PositiveNumber);

  auto* co = app.add_subcommand("conn", "Connectivity reports");
  add_common(co, cfg);
  std::string conn_format = "text";
  std::string i_spec;
  std::string j_spec;
  bool all_pairs = false;
  std::vector<std::size_t> ev;
  std::string set;
  std::optional<std::size_t> set_e;
  std::vector<std::size_t> witness;
  co->add_option("--i", i_spec, "Node index, fingerprint, trivial, complete or infinity");
  co->add_option("--j", j_spec, "Second node, same forms as --i");
  co->add_flag("--all-pairs", all_pairs, "Check LEHA on every pair of nodes");
  co->add_option("--ev", ev, "E_{a+b sigma} over C2")->expected(2);
  co->add_option("--set", set, "c,d for c*_C2 + d[C2/e]");
  co->add_option("--set-e", set_e, "k for k*_e");
  co->add_option("--ev-witness", witness, "a' b")->expected(2);
  co->add_option("--format", conn_format, "Output format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (en->parsed()) {
      return cmd_enumerate(cfg, transfer_systems);
    }
    if (eh->parsed()) {
      return cmd_eh_check(cfg, pair_file, sweep, p, displayed_only);
    }
    cfg.format = conn_format;
    if (!witness.empty()) {
      return conn_witness(cfg, witness[0], witness[1]);
    }
    if (!ev.empty()) {
      return conn_ev(cfg, ev[0], ev[1], parse_c2_set(set, set_e));
    }
    if (!all_pairs && (i_spec.empty() || j_spec.empty())) {
      throw InputError("conn needs --i and --j, --all-pairs, --ev or --ev-witness");
    }
    return conn_pairs(cfg, i_spec, j_spec, all_pairs);
  } catch (const TheoremViolation& e) {
    std::cerr << e.what() << "\n";
    return kExitViolation;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::bad_alloc&) {
    std::cerr << "guard: out of memory\n";
    return kExitGuard;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
