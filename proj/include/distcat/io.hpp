#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "category.hpp"
#include "dist.hpp"
#include "distlaw.hpp"
#include "error.hpp"
#include "exponential.hpp"
#include "fam.hpp"
#include "labels.hpp"
#include "lattice.hpp"

namespace distcat::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedInput("'" + path + "': " + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw MalformedInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string text(const json& j, const char* what) {
  if (!j.is_string()) throw MalformedInput(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::vector<std::string> text_list(const json& j, const char* what) {
  if (!j.is_array()) throw MalformedInput(std::string(what) + " must be a list");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : j) {
    out.push_back(text(e, what));
    if (!seen.insert(out.back()).second)
      throw MalformedInput(std::string(what) + ": duplicate label '" + out.back() + "'");
  }
  return out;
}

inline std::size_t position_of(const std::vector<std::string>& labels, const std::string& label,
                               const char* what) {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return k;
  throw MalformedInput(std::string(what) + ": unknown label '" + label + "'");
}

}  // namespace detail

/// Category schema: objects, morphisms {id, src, dst}, identities
/// {object: morphism}, compose [{g, f, result}]. An identity that is not
/// listed among the morphisms is synthesized as "id_<object>" (or the name
/// given in `identities`) together with its unit compositions.
inline PresentedCategory category_from_json(const json& j) {
  try {
    auto objects = detail::text_list(detail::field(j, "objects"), "objects");
    std::vector<PresentedCategory::MorphismDecl> morphisms;
    std::set<std::string> declared;
    if (j.contains("morphisms")) {
      for (const auto& m : j.at("morphisms")) {
        morphisms.push_back({detail::text(detail::field(m, "id"), "morphism id"),
                             detail::text(detail::field(m, "src"), "morphism src"),
                             detail::text(detail::field(m, "dst"), "morphism dst")});
        declared.insert(morphisms.back().id);
      }
    }
    std::map<std::string, std::string> identities;
    if (j.contains("identities")) {
      if (!j.at("identities").is_object()) throw MalformedInput("identities must be a map");
      for (const auto& [k, v] : j.at("identities").items()) identities[k] = detail::text(v, "identity");
    }
    std::vector<PresentedCategory::CompositionDecl> compose;
    std::set<std::pair<std::string, std::string>> given;
    if (j.contains("compose")) {
      for (const auto& c : j.at("compose")) {
        compose.push_back({detail::text(detail::field(c, "g"), "compose g"),
                           detail::text(detail::field(c, "f"), "compose f"),
                           detail::text(detail::field(c, "result"), "compose result")});
        given.emplace(compose.back().g, compose.back().f);
      }
    }
    const auto original = morphisms;
    for (const auto& o : objects) {
      auto& id = identities[o];
      if (id.empty()) id = "id_" + o;
      if (declared.count(id)) continue;
      morphisms.push_back({id, o, o});
      declared.insert(id);
      auto add = [&](const std::string& g, const std::string& f, const std::string& r) {
        if (given.emplace(g, f).second) compose.push_back({g, f, r});
      };
      add(id, id, id);
      for (const auto& m : original) {
        if (m.dst == o) add(id, m.id, m.id);
        if (m.src == o) add(m.id, id, m.id);
      }
    }
    return PresentedCategory(std::move(objects), std::move(morphisms), std::move(identities),
                             std::move(compose));
  } catch (const json::exception& e) {
    throw MalformedInput(e.what());
  }
}

inline ordered_json category_to_json(const PresentedCategory& cat) {
  ordered_json j;
  j["objects"] = cat.object_names();
  j["morphisms"] = ordered_json::array();
  for (const auto& m : cat.morphism_decls())
    j["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
  j["identities"] = ordered_json::object();
  for (const auto& [o, m] : cat.identity_decls()) j["identities"][o] = m;
  j["compose"] = ordered_json::array();
  for (const auto& c : cat.composition_decls())
    j["compose"].push_back({{"g", c.g}, {"f", c.f}, {"result", c.result}});
  return j;
}

inline PresentedCategory load_category(const std::string& path) {
  return category_from_json(read_json_file(path));
}

/// Fam object schema: {"index": [labels], "entries": {label: object id}}.
inline FamObject<ObjectId> fam_object_from_json(const PresentedCategory& base, const json& j) {
  FamObject<ObjectId> x;
  x.index = detail::text_list(detail::field(j, "index"), "index");
  const auto& entries = detail::field(j, "entries");
  for (const auto& label : x.index) {
    if (!entries.contains(label)) throw MalformedInput("entries not total: missing '" + label + "'");
    x.entries.push_back(base.object(detail::text(entries.at(label), "entry")));
  }
  if (entries.size() != x.index.size()) throw MalformedInput("entries has labels outside the index");
  return x;
}

inline ordered_json fam_object_to_json(const PresentedCategory& base, const FamObject<ObjectId>& x) {
  ordered_json j;
  j["index"] = x.index;
  j["entries"] = ordered_json::object();
  for (std::size_t k = 0; k < x.size(); ++k) j["entries"][x.index[k]] = base.name(x.entries[k]);
  return j;
}

/// Fam morphism schema: {"src", "dst", "table": {i: {"target": j, "morphism": id}}}.
inline ordered_json fam_morphism_to_json(const PresentedCategory& base,
                                         const FamMorphism<ObjectId, MorphismId>& m) {
  ordered_json j;
  j["src"] = fam_object_to_json(base, m.src);
  j["dst"] = fam_object_to_json(base, m.dst);
  j["table"] = ordered_json::object();
  for (std::size_t i = 0; i < m.table.size(); ++i)
    j["table"][m.src.index[i]] = {{"target", m.dst.index[m.table[i].target]},
                                  {"morphism", base.name(m.table[i].morphism)}};
  return j;
}

inline FamMorphism<ObjectId, MorphismId> fam_morphism_from_json(const PresentedCategory& base,
                                                                const json& j) {
  FamMorphism<ObjectId, MorphismId> m{fam_object_from_json(base, detail::field(j, "src")),
                                      fam_object_from_json(base, detail::field(j, "dst")), {}};
  const auto& table = detail::field(j, "table");
  for (const auto& i : m.src.index) {
    const auto& c = detail::field(table, i.c_str());
    const auto target = detail::position_of(m.dst.index, detail::text(detail::field(c, "target"), "target"), "target");
    const auto mor = base.find_morphism(detail::text(detail::field(c, "morphism"), "morphism"));
    if (!mor) throw MalformedInput("unknown morphism in Fam table");
    m.table.push_back({target, *mor});
  }
  return m;
}

/// Dist object schema: {"outer": [labels], "inner": {label: [labels]},
/// "entries": {"(j,i)": object id}}.
template <class Obj, class ReadObj>
DistObject<Obj> nested_family_from_json(const json& j, const char* outer_key, const char* inner_key,
                                        ReadObj&& read_obj) {
  DistObject<Obj> x;
  const auto outer = detail::text_list(detail::field(j, outer_key), outer_key);
  const auto& inner = detail::field(j, inner_key);
  const auto& entries = detail::field(j, "entries");
  if (!entries.is_object()) throw MalformedInput("entries must be a map");
  std::size_t used = 0;
  for (const auto& label : outer) {
    if (!inner.contains(label)) throw MalformedInput("inner not total: missing '" + label + "'");
    auto positions = detail::text_list(inner.at(label), inner_key);
    std::vector<Obj> objs;
    for (const auto& p : positions) {
      const auto key = pair_label(label, p);
      if (!entries.contains(key)) throw MalformedInput("entries not total: missing '" + key + "'");
      objs.push_back(read_obj(entries.at(key)));
      ++used;
    }
    x.add_shape(label, std::move(positions), std::move(objs));
  }
  if (inner.size() != outer.size()) throw MalformedInput("inner has labels outside the outer index");
  if (entries.size() != used) throw MalformedInput("entries has keys outside the index");
  return x;
}

template <class Obj, class WriteObj>
ordered_json nested_family_to_json(const DistObject<Obj>& x, const char* outer_key,
                                   const char* inner_key, WriteObj&& write_obj) {
  ordered_json j;
  j[outer_key] = x.outer;
  j[inner_key] = ordered_json::object();
  j["entries"] = ordered_json::object();
  for (std::size_t s = 0; s < x.shape_count(); ++s) {
    j[inner_key][x.outer[s]] = x.inner[s];
    for (std::size_t i = 0; i < x.position_count(s); ++i)
      j["entries"][pair_label(x.outer[s], x.inner[s][i])] = write_obj(x.entries[s][i]);
  }
  return j;
}

inline DistObject<ObjectId> dist_object_from_json(const PresentedCategory& base, const json& j) {
  try {
    return nested_family_from_json<ObjectId>(j, "outer", "inner", [&](const json& e) {
      return base.object(detail::text(e, "entry"));
    });
  } catch (const UnknownObject& e) {
    throw MalformedInput(e.what());
  } catch (const json::exception& e) {
    throw MalformedInput(e.what());
  }
}

inline ordered_json dist_object_to_json(const PresentedCategory& base, const DistObject<ObjectId>& x) {
  return nested_family_to_json(x, "outer", "inner", [&](ObjectId o) { return base.name(o); });
}

inline DistObject<ObjectId> load_dist_object(const PresentedCategory& base, const std::string& path) {
  return dist_object_from_json(base, read_json_file(path));
}

/// Dist morphism schema: {"src", "dst", "table": {j: {"target": j',
/// "inner": {i': {"source": i, "morphism": id}}}}}.
inline ordered_json dist_morphism_to_json(const PresentedCategory& base,
                                          const DistMorphism<ObjectId, MorphismId>& m) {
  ordered_json j;
  j["src"] = dist_object_to_json(base, m.source());
  j["dst"] = dist_object_to_json(base, m.target());
  j["table"] = ordered_json::object();
  for (std::size_t s = 0; s < m.table.size(); ++s) {
    const auto& sc = m.table[s];
    ordered_json inner = ordered_json::object();
    for (std::size_t ip = 0; ip < sc.positions.size(); ++ip)
      inner[m.target().inner[sc.target][ip]] = {
          {"source", m.source().inner[s][sc.positions[ip].source]},
          {"morphism", base.name(sc.positions[ip].morphism)}};
    j["table"][m.source().outer[s]] = {{"target", m.target().outer[sc.target]},
                                       {"inner", std::move(inner)}};
  }
  return j;
}

inline DistMorphism<ObjectId, MorphismId> dist_morphism_from_json(const PresentedCategory& base,
                                                                  const json& j) {
  using Category = Dist<PresentedCategory>;
  try {
    DistMorphism<ObjectId, MorphismId> m{
        Category::share(dist_object_from_json(base, detail::field(j, "src"))),
        Category::share(dist_object_from_json(base, detail::field(j, "dst"))),
        {}};
    const auto& table = detail::field(j, "table");
    const auto& x = m.source();
    const auto& y = m.target();
    for (std::size_t s = 0; s < x.shape_count(); ++s) {
      const auto& entry = detail::field(table, x.outer[s].c_str());
      ShapeComponent<MorphismId> sc{
          detail::position_of(y.outer, detail::text(detail::field(entry, "target"), "target"), "target"), {}};
      const auto& inner = detail::field(entry, "inner");
      for (const auto& ip : y.inner[sc.target]) {
        const auto& pc = detail::field(inner, ip.c_str());
        const auto src = detail::position_of(x.inner[s], detail::text(detail::field(pc, "source"), "source"), "source");
        const auto mor = base.find_morphism(detail::text(detail::field(pc, "morphism"), "morphism"));
        if (!mor) throw MalformedInput("unknown morphism in Dist table");
        sc.positions.push_back({src, *mor});
      }
      m.table.push_back(std::move(sc));
    }
    Dist<PresentedCategory>(base).check_morphism(m);
    return m;
  } catch (const json::exception& e) {
    throw MalformedInput(e.what());
  } catch (const TypeMismatch& e) {
    throw MalformedInput(e.what());
  }
}

/// Exponent shape: {j: {"target": j', "inner": {i': "bot" | {"source": i, "morphism": id}}}}.
inline ordered_json exponent_shape_to_json(const PresentedCategory& base, const DistObject<ObjectId>& a,
                                           const DistObject<ObjectId>& b,
                                           const ExponentShape<MorphismId>& shape) {
  ordered_json j = ordered_json::object();
  for (std::size_t s = 0; s < shape.size(); ++s) {
    const auto& choice = shape[s];
    ordered_json inner = ordered_json::object();
    for (std::size_t ip = 0; ip < choice.positions.size(); ++ip) {
      const auto& slot = choice.positions[ip];
      if (slot)
        inner[b.inner[choice.target][ip]] = {{"source", a.inner[s][slot->source]},
                                             {"morphism", base.name(slot->morphism)}};
      else
        inner[b.inner[choice.target][ip]] = std::string(kBottomLabel);
    }
    j[a.outer[s]] = {{"target", b.outer[choice.target]}, {"inner", std::move(inner)}};
  }
  return j;
}

/// Lattice schema: {"elements": [names], "leq": [[a, b], ...]}.
inline FiniteLattice lattice_from_json(const json& j) {
  try {
    auto elements = detail::text_list(detail::field(j, "elements"), "elements");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : detail::field(j, "leq")) {
      if (!p.is_array() || p.size() != 2) throw MalformedInput("leq entries must be [a, b] pairs");
      pairs.emplace_back(detail::text(p[0], "leq"), detail::text(p[1], "leq"));
    }
    return FiniteLattice(std::move(elements), pairs);
  } catch (const UnknownObject& e) {
    throw MalformedInput(e.what());
  } catch (const json::exception& e) {
    throw MalformedInput(e.what());
  }
}

inline ordered_json lattice_to_json(const FiniteLattice& l) {
  ordered_json j;
  j["elements"] = l.names();
  j["leq"] = ordered_json::array();
  for (const auto& [a, b] : l.order_pairs()) j["leq"].push_back({a, b});
  return j;
}

/// Distributor family schema: {"J": [labels], "I": {j: [labels]},
/// "entries": {"(j,i)": spec}}, with the spec read by `read_obj`.
template <class Obj, class ReadObj>
DistributorFamily<Obj> family_from_json(const json& j, ReadObj&& read_obj) {
  try {
    auto x = nested_family_from_json<Obj>(j, "J", "I", std::forward<ReadObj>(read_obj));
    return {std::move(x.outer), std::move(x.inner), std::move(x.entries)};
  } catch (const json::exception& e) {
    throw MalformedInput(e.what());
  }
}

template <class Obj, class WriteObj>
ordered_json family_to_json(const DistributorFamily<Obj>& fam, WriteObj&& write_obj) {
  DistObject<Obj> x{fam.outer, fam.inner, fam.entries};
  return nested_family_to_json(x, "J", "I", std::forward<WriteObj>(write_obj));
}

inline std::size_t finset_spec(const json& e) {
  if (!e.is_number_integer() || e.get<long long>() < 0)
    throw MalformedInput("FinSet object spec must be a nonnegative integer");
  return e.get<std::size_t>();
}

}  // namespace distcat::io
