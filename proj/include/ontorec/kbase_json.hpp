#pragma once
// Ontology exchange format: one JSON document per layer.
//
//   {"assertions": [{"object": {"id": ...} | {"datatype": ..., "literal": ...},
//                    "property": ..., "subject": ...}],
//    "concepts":   [{"id", "label", "parents": [...]}],
//    "individuals":[{"id", "label", "types": [...]}],
//    "layer": "domain",
//    "properties": [{"domain", "id", "range"}]}
//
// nlohmann::json objects keep keys sorted, so dump() is deterministic.

#include "json.hpp"

#include "ontorec/error.hpp"
#include "ontorec/kbase.hpp"

namespace ontorec {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::SchemaError, std::string("missing key '") + key + "'");
  return j.at(key);
}

inline std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw Error(Errc::SchemaError, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (!v.is_array()) throw Error(Errc::SchemaError, std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) throw Error(Errc::SchemaError, std::string("'") + key + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

inline const json& list_or_empty(const json& j, const char* key) {
  static const json empty = json::array();
  if (!j.contains(key)) return empty;
  if (!j.at(key).is_array()) throw Error(Errc::SchemaError, std::string("'") + key + "' must be a list");
  return j.at(key);
}

}  // namespace detail

inline json to_json(const Assertion& a) {
  json object;
  if (const auto* ref = a.object_ref()) {
    object["id"] = ref->id;
  } else {
    object["literal"] = a.literal()->value;
    object["datatype"] = datatype_name(a.literal()->datatype);
  }
  return {{"subject", a.subject}, {"property", a.property}, {"object", object}};
}

inline Assertion assertion_from_json(const json& j) {
  Assertion a;
  a.subject = detail::require_string(j, "subject");
  a.property = detail::require_string(j, "property");
  const json& object = detail::require(j, "object");
  if (object.contains("id")) {
    a.object = ObjectRef{detail::require_string(object, "id")};
  } else {
    auto dt = parse_datatype(detail::require_string(object, "datatype"));
    if (!dt) throw Error(Errc::SchemaError, "unknown datatype in assertion object");
    const json& lit = detail::require(object, "literal");
    std::string value = lit.is_string() ? lit.get<std::string>() : lit.dump();
    a.object = Literal{std::move(value), *dt};
  }
  return a;
}

inline json to_json(const LayerContent& layer) {
  json concepts = json::array(), properties = json::array(), individuals = json::array(),
       assertions = json::array();
  for (const auto& c : layer.concepts)
    concepts.push_back({{"id", c.id}, {"label", c.label}, {"parents", c.parents}});
  for (const auto& p : layer.properties)
    properties.push_back({{"id", p.id}, {"domain", p.domain}, {"range", p.range}});
  for (const auto& i : layer.individuals)
    individuals.push_back({{"id", i.id}, {"label", i.label}, {"types", i.types}});
  for (const auto& a : layer.assertions) assertions.push_back(to_json(a));
  return {{"layer", layer_name(layer.layer)},
          {"concepts", concepts},
          {"properties", properties},
          {"individuals", individuals},
          {"assertions", assertions}};
}

inline LayerContent layer_from_json(const json& j) {
  LayerContent out;
  auto layer = parse_layer(detail::require_string(j, "layer"));
  if (!layer) throw Error(Errc::SchemaError, "unknown layer name");
  out.layer = *layer;
  for (const auto& c : detail::list_or_empty(j, "concepts")) {
    Concept con;
    con.id = detail::require_string(c, "id");
    con.label = c.value("label", "");
    for (auto& p : detail::string_list(c, "parents")) con.parents.insert(std::move(p));
    out.concepts.push_back(std::move(con));
  }
  for (const auto& p : detail::list_or_empty(j, "properties")) {
    out.properties.push_back({detail::require_string(p, "id"), detail::require_string(p, "domain"),
                              detail::require_string(p, "range")});
  }
  for (const auto& i : detail::list_or_empty(j, "individuals")) {
    out.individuals.push_back(
        {detail::require_string(i, "id"), i.value("label", ""), detail::string_list(i, "types")});
  }
  for (const auto& a : detail::list_or_empty(j, "assertions"))
    out.assertions.push_back(assertion_from_json(a));
  return out;
}

inline json to_json(const Violation& v) {
  return {{"rule", v.rule}, {"id", v.id}, {"message", v.message}};
}

inline json to_json(const DanglingReport& r) {
  json assertions = json::array();
  for (const auto& a : r.assertions) assertions.push_back(to_json(a));
  return {{"lexicalEntries", r.lexical_entries},
          {"annotations", r.annotations},
          {"assertions", assertions}};
}

inline DanglingReport dangling_from_json(const json& j) {
  try {
    DanglingReport r;
    r.lexical_entries = j.at("lexicalEntries").get<std::vector<std::string>>();
    r.annotations = j.at("annotations").get<std::vector<std::string>>();
    for (const auto& a : j.at("assertions")) r.assertions.push_back(assertion_from_json(a));
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("dangling report: ") + e.what());
  }
}

}  // namespace ontorec
