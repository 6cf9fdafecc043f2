#ifndef EHKIT_IO_HPP_
#define EHKIT_IO_HPP_

// JSON and DOT formats. Every loader validates its input and throws InputError
// on malformed documents.

#include <string>

#include <nlohmann/json.hpp>

#include "ehkit/connectivity.hpp"
#include "ehkit/group.hpp"
#include "ehkit/gset.hpp"
#include "ehkit/magma.hpp"
#include "ehkit/windex.hpp"

namespace ehkit {

using Json = nlohmann::json;

// {"order": n, "mul": [[...]], "name": str}
Json group_to_json(const FiniteGroup& g);
GroupPtr group_from_json(const Json& j);
/// "cyclic:n", "Cn", or a path to a group JSON file.
GroupPtr parse_group_spec(const std::string& spec);

// {"group": name, "points": n, "act": [[...]]}; "acting" lists the acting
// subgroup when it is proper, and then "act" has one row per member.
Json gset_to_json(const GSet& s);
GSet gset_from_json(const Json& j, const GroupPtr& g);

// {"src": gset, "dst": gset, "map": [...]}
Json gset_map_to_json(const GSetMap& f);
GSetMap gset_map_from_json(const Json& j, const GroupPtr& g);

// {"apex", "source", "target": gset, "left", "right": [...]}
Json span_to_json(const Span& s);
Span span_from_json(const Json& j, const GroupPtr& g);

Json subgroup_to_json(const Subgroup& h);

/// Admissible orbit multisets per subgroup class.
Json category_to_json(const WeakIndexingCategory& i);
Json system_to_json(const WeakIndexingSystem& f);
Json transfer_system_to_json(const TransferSystem& t);

/// Nodes plus covering pairs.
Json category_poset_to_json(const Poset<WeakIndexingCategory>& p);
Json system_poset_to_json(const Poset<WeakIndexingSystem>& p);
Json transfer_poset_to_json(const Poset<TransferSystem>& p);

/// Hasse diagram; nodes are labelled by fingerprint (or by relation for
/// transfer systems).
std::string category_poset_to_dot(const Poset<WeakIndexingCategory>& p);
std::string system_poset_to_dot(const Poset<WeakIndexingSystem>& p);
std::string transfer_poset_to_dot(const Poset<TransferSystem>& p);

// Magmas: carriers as sizes, operations as square tables, maps as arrays.
Json magma_to_json(const CpUnitalMagma& m);
CpUnitalMagma magma_from_json(const Json& j);
// {"p", "size_e", "size_G", "sigma", "r", "star": {...}, "bullet": {...}}
Json pair_to_json(const InterchangePair& pair);
InterchangePair pair_from_json(const Json& j);
Json semi_mackey_to_json(const SemiMackeyFunctor& sm);

Json ext_int_to_json(ExtInt v);
/// {node-fingerprint: value}
Json conn_to_json(const ConnFunction& f);

/// Reads a whole file; throws InputError if it cannot be opened or parsed.
Json read_json_file(const std::string& path);

}  // namespace ehkit

#endif  // EHKIT_IO_HPP_
