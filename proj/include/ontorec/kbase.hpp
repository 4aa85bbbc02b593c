#pragma once
// Four-layer knowledge base: a TBox (concept hierarchy, property definitions)
// and an ABox (individuals, typings, binary assertions), partitioned into the
// upper, domain, lexical and corpus layers.
//
// Every id is namespaced "<layer>:<localname>" and the layer of a concept,
// property, individual or assertion (via its subject) is read off that prefix.
// A layer may only reference itself and the upper layer.
//
// KnowledgeBase is a value type. Checked mutators either succeed and bump
// version() or throw ontorec::Error and leave the object untouched, so
// copying a KnowledgeBase gives an immutable snapshot.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontorec/date.hpp"
#include "ontorec/error.hpp"

namespace ontorec {

enum class Layer { Upper, Domain, Lexical, Corpus };

inline constexpr std::array<Layer, 4> kLayers{Layer::Upper, Layer::Domain, Layer::Lexical,
                                               Layer::Corpus};

inline std::string_view layer_name(Layer l) {
  switch (l) {
    case Layer::Upper: return "upper";
    case Layer::Domain: return "domain";
    case Layer::Lexical: return "lexical";
    case Layer::Corpus: return "corpus";
  }
  return "";
}

inline std::optional<Layer> parse_layer(std::string_view name) {
  for (Layer l : kLayers)
    if (layer_name(l) == name) return l;
  return std::nullopt;
}

// Layer encoded in a namespaced id, or nullopt when the id is malformed.
inline std::optional<Layer> layer_of(std::string_view id) {
  auto colon = id.find(':');
  if (colon == std::string_view::npos || colon + 1 == id.size()) return std::nullopt;
  return parse_layer(id.substr(0, colon));
}

inline Layer require_layer(std::string_view id) {
  auto l = layer_of(id);
  if (!l) throw Error(Errc::InvalidId, "id '" + std::string(id) + "' is not <layer>:<localname>");
  return *l;
}

inline bool may_reference(Layer from, Layer to) { return to == from || to == Layer::Upper; }

enum class Datatype { String, Date, Integer };

inline std::string_view datatype_name(Datatype d) {
  switch (d) {
    case Datatype::String: return "string";
    case Datatype::Date: return "date";
    case Datatype::Integer: return "integer";
  }
  return "";
}

inline std::optional<Datatype> parse_datatype(std::string_view s) {
  if (s == "string") return Datatype::String;
  if (s == "date") return Datatype::Date;
  if (s == "integer") return Datatype::Integer;
  return std::nullopt;
}

inline bool literal_matches(Datatype d, std::string_view value) {
  switch (d) {
    case Datatype::String: return true;
    case Datatype::Date: return parse_partial_date(value).has_value();
    case Datatype::Integer: {
      static const std::regex integer("[+-]?[0-9]+");
      return std::regex_match(value.begin(), value.end(), integer);
    }
  }
  return false;
}

struct Concept {
  std::string id;
  std::string label;
  std::set<std::string> parents;

  Layer layer() const { return require_layer(id); }
  bool operator==(const Concept&) const = default;
};

struct PropertyDef {
  std::string id;
  std::string domain;
  // Either a concept id or one of the datatype names.
  std::string range;

  std::optional<Datatype> range_datatype() const { return parse_datatype(range); }
  bool operator==(const PropertyDef&) const = default;
};

struct Individual {
  std::string id;
  std::string label;
  // Ordered; the first entry is the primary type.
  std::vector<std::string> types;

  Layer layer() const { return require_layer(id); }
  const std::string& primary_type() const { return types.front(); }
  bool operator==(const Individual&) const = default;
};

struct ObjectRef {
  std::string id;
  auto operator<=>(const ObjectRef&) const = default;
};

struct Literal {
  std::string value;
  Datatype datatype = Datatype::String;
  auto operator<=>(const Literal&) const = default;
};

struct Assertion {
  std::string subject;
  std::string property;
  std::variant<ObjectRef, Literal> object;

  const ObjectRef* object_ref() const { return std::get_if<ObjectRef>(&object); }
  const Literal* literal() const { return std::get_if<Literal>(&object); }
  auto operator<=>(const Assertion&) const = default;
};

// Stable textual id for an assertion, e.g. "domain:acme domain:locatedIn domain:dijon".
inline std::string assertion_key(const Assertion& a) {
  std::string key = a.subject + " " + a.property + " ";
  if (const auto* ref = a.object_ref())
    key += ref->id;
  else
    key += "\"" + a.literal()->value + "\"^^" + std::string(datatype_name(a.literal()->datatype));
  return key;
}

// All content of one layer, in the shape of the ontology exchange file.
struct LayerContent {
  Layer layer = Layer::Domain;
  std::vector<Concept> concepts;
  std::vector<PropertyDef> properties;
  std::vector<Individual> individuals;
  std::vector<Assertion> assertions;
};

struct Violation {
  std::string rule;  // an Errc name, or EmptyTypes
  std::string id;
  std::string message;
};

// A reference held outside the knowledge base (a lexicon entry or a stored
// annotation) that a domain swap may leave pointing at a removed id.
struct ExternalRef {
  enum class Kind { LexicalEntry, Annotation };
  Kind kind;
  std::string ref;     // id of the referring object
  std::string target;  // concept or individual it points at
};

struct DanglingReport {
  std::vector<std::string> lexical_entries;
  std::vector<std::string> annotations;
  std::vector<Assertion> assertions;

  bool empty() const { return lexical_entries.empty() && annotations.empty() && assertions.empty(); }
};

class KnowledgeBase {
 public:
  uint64_t version() const { return version_; }

  const std::map<std::string, Concept>& concepts() const { return concepts_; }
  const std::map<std::string, PropertyDef>& properties() const { return properties_; }
  const std::map<std::string, Individual>& individuals() const { return individuals_; }
  const std::vector<Assertion>& assertions() const { return assertions_; }
  // Assertions flagged invalid by a domain swap. They are kept, and skipped by validate().
  const std::set<Assertion>& dangling_assertions() const { return dangling_; }

  bool has_concept(std::string_view id) const { return concepts_.contains(std::string(id)); }
  bool has_property(std::string_view id) const { return properties_.contains(std::string(id)); }
  bool has_individual(std::string_view id) const { return individuals_.contains(std::string(id)); }

  const Concept& concept_at(const std::string& id) const {
    auto it = concepts_.find(id);
    if (it == concepts_.end()) throw Error(Errc::UnknownId, "concept " + id);
    return it->second;
  }
  const Individual& individual_at(const std::string& id) const {
    auto it = individuals_.find(id);
    if (it == individuals_.end()) throw Error(Errc::UnknownId, "individual " + id);
    return it->second;
  }
  const PropertyDef& property_at(const std::string& id) const {
    auto it = properties_.find(id);
    if (it == properties_.end()) throw Error(Errc::UnknownId, "property " + id);
    return it->second;
  }

  // ---- checked mutations -------------------------------------------------

  void add_concept(Concept c) {
    Layer layer = require_layer(c.id);
    if (taken(c.id)) throw Error(Errc::DuplicateId, c.id);
    for (const auto& p : c.parents) {
      auto it = concepts_.find(p);
      if (it == concepts_.end()) throw Error(Errc::UnknownParent, c.id + " -> " + p);
      if (!may_reference(layer, it->second.layer()))
        throw Error(Errc::LayerViolation, c.id + " cannot specialise " + p);
    }
    for (const auto& p : c.parents) children_[p].insert(c.id);
    std::string id = c.id;
    concepts_.emplace(std::move(id), std::move(c));
    ++version_;
  }

  void add_subclass_axiom(const std::string& child, const std::string& parent) {
    auto ci = concepts_.find(child);
    if (ci == concepts_.end()) throw Error(Errc::UnknownId, "concept " + child);
    auto pi = concepts_.find(parent);
    if (pi == concepts_.end()) throw Error(Errc::UnknownId, "concept " + parent);
    if (child == parent || ancestors(parent).contains(child))
      throw Error(Errc::CycleDetected, child + " ⊑ " + parent);
    if (!may_reference(ci->second.layer(), pi->second.layer()))
      throw Error(Errc::LayerViolation, child + " cannot specialise " + parent);
    if (!ci->second.parents.insert(parent).second) return;
    children_[parent].insert(child);
    ++version_;
  }

  void add_property(PropertyDef p) {
    Layer layer = require_layer(p.id);
    if (taken(p.id)) throw Error(Errc::DuplicateId, p.id);
    check_concept_ref(p.id, layer, p.domain);
    if (!p.range_datatype()) check_concept_ref(p.id, layer, p.range);
    std::string id = p.id;
    properties_.emplace(std::move(id), std::move(p));
    ++version_;
  }

  void add_individual(Individual ind) {
    Layer layer = require_layer(ind.id);
    if (taken(ind.id)) throw Error(Errc::DuplicateId, ind.id);
    if (ind.types.empty()) throw Error(Errc::UnknownConcept, ind.id + " has no type");
    std::set<std::string> seen;
    for (const auto& t : ind.types) {
      check_concept_ref(ind.id, layer, t);
      if (!seen.insert(t).second) throw Error(Errc::DuplicateId, ind.id + " typed twice by " + t);
    }
    for (const auto& t : ind.types) typed_[t].insert(ind.id);
    std::string id = ind.id;
    individuals_.emplace(std::move(id), std::move(ind));
    ++version_;
  }

  // Adds a type to an existing individual.
  void add_type(const std::string& individual, const std::string& type) {
    auto it = individuals_.find(individual);
    if (it == individuals_.end()) throw Error(Errc::UnknownId, "individual " + individual);
    check_concept_ref(individual, it->second.layer(), type);
    auto& types = it->second.types;
    if (std::find(types.begin(), types.end(), type) != types.end()) return;
    types.push_back(type);
    typed_[type].insert(individual);
    ++version_;
  }

  void assert_relation(Assertion a) {
    if (auto v = check_assertion(a)) throw Error(errc_from_rule(v->rule), v->message);
    assertions_.push_back(std::move(a));
    ++version_;
  }

  // ---- inference ---------------------------------------------------------

  // Shortest subclass distance from c to each of its ancestors (c itself at 0).
  std::map<std::string, int> ancestor_distances(const std::string& c) const {
    if (!has_concept(c)) throw Error(Errc::UnknownId, "concept " + c);
    std::map<std::string, int> dist{{c, 0}};
    std::deque<std::string> queue{c};
    while (!queue.empty()) {
      std::string cur = std::move(queue.front());
      queue.pop_front();
      auto it = concepts_.find(cur);
      if (it == concepts_.end()) continue;
      for (const auto& p : it->second.parents) {
        if (dist.emplace(p, dist[cur] + 1).second) queue.push_back(p);
      }
    }
    return dist;
  }

  // Reflexive-transitive closure of the subclass relation.
  std::set<std::string> ancestors(const std::string& c) const {
    std::set<std::string> out;
    for (const auto& [id, d] : ancestor_distances(c)) out.insert(id);
    return out;
  }

  std::set<std::string> descendants(const std::string& c) const {
    if (!has_concept(c)) throw Error(Errc::UnknownId, "concept " + c);
    std::set<std::string> out{c};
    std::deque<std::string> queue{c};
    while (!queue.empty()) {
      std::string cur = std::move(queue.front());
      queue.pop_front();
      auto it = children_.find(cur);
      if (it == children_.end()) continue;
      for (const auto& ch : it->second)
        if (out.insert(ch).second) queue.push_back(ch);
    }
    return out;
  }

  bool subsumed_by(const std::string& c, const std::string& ancestor) const {
    return has_concept(c) && ancestors(c).contains(ancestor);
  }

  std::set<std::string> instances_of(const std::string& c, bool inferred) const {
    if (!has_concept(c)) throw Error(Errc::UnknownId, "concept " + c);
    std::set<std::string> out;
    auto collect = [&](const std::string& concept_id) {
      auto it = typed_.find(concept_id);
      if (it != typed_.end()) out.insert(it->second.begin(), it->second.end());
    };
    if (!inferred) {
      collect(c);
      return out;
    }
    for (const auto& d : descendants(c)) collect(d);
    return out;
  }

  // True when some type of the individual is a descendant-or-self of c.
  bool is_instance(const std::string& individual, const std::string& c) const {
    auto it = individuals_.find(individual);
    if (it == individuals_.end()) return false;
    for (const auto& t : it->second.types)
      if (subsumed_by(t, c)) return true;
    return false;
  }

  // Kahn ordering of concepts, parents first; nullopt if the hierarchy is cyclic.
  std::optional<std::vector<std::string>> topological_order() const {
    std::map<std::string, size_t> pending;
    for (const auto& [id, c] : concepts_) {
      size_t n = 0;
      for (const auto& p : c.parents) n += concepts_.contains(p) ? 1 : 0;
      pending[id] = n;
    }
    std::deque<std::string> ready;
    for (const auto& [id, n] : pending)
      if (n == 0) ready.push_back(id);
    std::vector<std::string> order;
    while (!ready.empty()) {
      std::string cur = std::move(ready.front());
      ready.pop_front();
      auto it = children_.find(cur);
      if (it != children_.end())
        for (const auto& ch : it->second)
          if (concepts_.contains(ch) && --pending[ch] == 0) ready.push_back(ch);
      order.push_back(std::move(cur));
    }
    if (order.size() != concepts_.size()) return std::nullopt;
    return order;
  }

  // ---- integrity ---------------------------------------------------------

  std::vector<Violation> validate() const {
    std::vector<Violation> out;
    auto bad_id = [&](const std::string& id) {
      if (layer_of(id)) return false;
      out.push_back({"InvalidId", id, "id is not <layer>:<localname>"});
      return true;
    };
    for (const auto& [id, c] : concepts_) {
      if (bad_id(id)) continue;
      for (const auto& p : c.parents) {
        auto it = concepts_.find(p);
        if (it == concepts_.end())
          out.push_back({"UnknownParent", id, "parent " + p + " does not resolve"});
        else if (!may_reference(c.layer(), it->second.layer()))
          out.push_back({"LayerViolation", id, "parent " + p + " is in a forbidden layer"});
      }
    }
    for (const auto& cycle : cycles())
      out.push_back({"CycleDetected", cycle, "subclass cycle through " + cycle});
    for (const auto& [id, p] : properties_) {
      if (bad_id(id)) continue;
      auto refs = p.range_datatype() ? std::vector<std::string>{p.domain}
                                     : std::vector<std::string>{p.domain, p.range};
      for (const auto& r : refs) {
        auto it = concepts_.find(r);
        if (it == concepts_.end())
          out.push_back({"UnknownConcept", id, r + " does not resolve"});
        else if (!may_reference(require_layer(id), it->second.layer()))
          out.push_back({"LayerViolation", id, r + " is in a forbidden layer"});
      }
    }
    for (const auto& [id, ind] : individuals_) {
      if (bad_id(id)) continue;
      if (ind.types.empty()) out.push_back({"EmptyTypes", id, "individual has no type"});
      for (const auto& t : ind.types) {
        auto it = concepts_.find(t);
        if (it == concepts_.end())
          out.push_back({"UnknownConcept", id, "type " + t + " does not resolve"});
        else if (!may_reference(ind.layer(), it->second.layer()))
          out.push_back({"LayerViolation", id, "type " + t + " is in a forbidden layer"});
      }
    }
    for (const auto& a : assertions_) {
      if (dangling_.contains(a)) continue;
      if (auto v = check_assertion(a)) out.push_back(std::move(*v));
    }
    return out;
  }

  // ---- layers ------------------------------------------------------------

  LayerContent layer_content(Layer layer) const {
    LayerContent out;
    out.layer = layer;
    for (const auto& [id, c] : concepts_)
      if (layer_of(id) == layer) out.concepts.push_back(c);
    for (const auto& [id, p] : properties_)
      if (layer_of(id) == layer) out.properties.push_back(p);
    for (const auto& [id, ind] : individuals_)
      if (layer_of(id) == layer) out.individuals.push_back(ind);
    for (const auto& a : assertions_)
      if (layer_of(a.subject) == layer) out.assertions.push_back(a);
    return out;
  }

  // Bulk insertion without integrity checks (used when loading files); run
  // validate() afterwards. Throws DuplicateId / InvalidId only.
  void load_unchecked(const LayerContent& content) {
    auto own = [&](const std::string& id) {
      if (layer_of(id) != content.layer)
        throw Error(Errc::InvalidId, id + " does not belong to layer " +
                                         std::string(layer_name(content.layer)));
      if (taken(id)) throw Error(Errc::DuplicateId, id);
    };
    for (const auto& c : content.concepts) own(c.id);
    for (const auto& p : content.properties) own(p.id);
    for (const auto& i : content.individuals) own(i.id);
    std::set<std::string> batch;
    for (const auto& c : content.concepts) batch.insert(c.id);
    for (const auto& p : content.properties) batch.insert(p.id);
    for (const auto& i : content.individuals) batch.insert(i.id);
    auto total = content.concepts.size() + content.properties.size() + content.individuals.size();
    if (batch.size() != total) throw Error(Errc::DuplicateId, "repeated id inside layer file");
    for (const auto& a : content.assertions)
      if (layer_of(a.subject) != content.layer)
        throw Error(Errc::InvalidId, "assertion subject " + a.subject + " outside layer");

    for (const auto& c : content.concepts) {
      for (const auto& p : c.parents) children_[p].insert(c.id);
      concepts_.emplace(c.id, c);
    }
    for (const auto& p : content.properties) properties_.emplace(p.id, p);
    for (const auto& i : content.individuals) {
      for (const auto& t : i.types) typed_[t].insert(i.id);
      individuals_.emplace(i.id, i);
    }
    assertions_.insert(assertions_.end(), content.assertions.begin(), content.assertions.end());
    ++version_;
  }

  // Re-flag assertions recorded as dangling by an earlier swap (after a reload).
  void mark_dangling(std::span<const Assertion> flagged) {
    for (const auto& a : flagged)
      if (std::find(assertions_.begin(), assertions_.end(), a) != assertions_.end()) dangling_.insert(a);
  }

  // Replace the domain layer atomically. Upper, lexical and corpus content is
  // kept as is; references into removed domain ids are reported (and
  // assertions flagged), never deleted.
  DanglingReport swap_domain(const LayerContent& domain, std::span<const ExternalRef> external) {
    if (domain.layer != Layer::Domain)
      throw Error(Errc::InvalidDomainLayer, "replacement content is not the domain layer");

    KnowledgeBase next;
    next.version_ = version_;
    for (Layer l : kLayers)
      if (l != Layer::Domain) next.load_unchecked(layer_content(l));
    try {
      next.load_unchecked(domain);
    } catch (const Error& e) {
      throw Error(Errc::InvalidDomainLayer, e.what());
    }

    DanglingReport report;
    for (const auto& a : next.assertions_) {
      if (layer_of(a.subject) == Layer::Domain) continue;
      if (next.references_missing(a)) {
        next.dangling_.insert(a);
        report.assertions.push_back(a);
      }
    }

    std::vector<std::string> problems;
    for (const auto& v : next.validate()) {
      if (layer_of(v.id) == Layer::Domain || v.rule == "CycleDetected")
        problems.push_back(v.rule + " " + v.id + ": " + v.message);
    }
    if (!problems.empty()) {
      std::string msg;
      for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
      throw Error(Errc::InvalidDomainLayer, msg);
    }

    std::set<std::pair<ExternalRef::Kind, std::string>> reported;
    for (const auto& ref : external) {
      if (next.has_concept(ref.target) || next.has_individual(ref.target)) continue;
      if (!reported.insert({ref.kind, ref.ref}).second) continue;
      (ref.kind == ExternalRef::Kind::LexicalEntry ? report.lexical_entries : report.annotations)
          .push_back(ref.ref);
    }

    next.version_ = version_ + 1;
    *this = std::move(next);
    return report;
  }

 private:
  bool taken(const std::string& id) const {
    return concepts_.contains(id) || properties_.contains(id) || individuals_.contains(id);
  }

  void check_concept_ref(const std::string& owner, Layer owner_layer,
                         const std::string& concept_id) const {
    auto it = concepts_.find(concept_id);
    if (it == concepts_.end())
      throw Error(Errc::UnknownConcept, owner + " references " + concept_id);
    if (!may_reference(owner_layer, it->second.layer()))
      throw Error(Errc::LayerViolation, owner + " cannot reference " + concept_id);
  }

  bool references_missing(const Assertion& a) const {
    if (!has_individual(a.subject) || !has_property(a.property)) return true;
    if (const auto* ref = a.object_ref()) return !has_individual(ref->id);
    return false;
  }

  static Errc errc_from_rule(const std::string& rule) {
    if (rule == "DomainViolation") return Errc::DomainViolation;
    if (rule == "RangeViolation") return Errc::RangeViolation;
    if (rule == "InvalidId") return Errc::InvalidId;
    return Errc::UnknownId;
  }

  std::optional<Violation> check_assertion(const Assertion& a) const {
    std::string key = assertion_key(a);
    if (!layer_of(a.subject)) return Violation{"InvalidId", key, "subject id is malformed"};
    auto prop = properties_.find(a.property);
    if (prop == properties_.end())
      return Violation{"UnknownId", key, "property " + a.property + " does not resolve"};
    if (!has_individual(a.subject))
      return Violation{"UnknownId", key, "subject " + a.subject + " does not resolve"};
    if (const auto* ref = a.object_ref(); ref && !has_individual(ref->id))
      return Violation{"UnknownId", key, "object " + ref->id + " does not resolve"};

    const PropertyDef& p = prop->second;
    if (!is_instance(a.subject, p.domain))
      return Violation{"DomainViolation", key, a.subject + " is not a " + p.domain};

    if (auto dt = p.range_datatype()) {
      const auto* lit = a.literal();
      if (!lit) return Violation{"RangeViolation", key, "expected a " + p.range + " literal"};
      if (lit->datatype != *dt || !literal_matches(*dt, lit->value))
        return Violation{"RangeViolation", key, "'" + lit->value + "' is not a valid " + p.range};
    } else {
      const auto* ref = a.object_ref();
      if (!ref) return Violation{"RangeViolation", key, "expected an individual of " + p.range};
      if (!is_instance(ref->id, p.range))
        return Violation{"RangeViolation", key, ref->id + " is not a " + p.range};
    }
    return std::nullopt;
  }

  // One entry per cyclic strongly connected component: its smallest id.
  std::vector<std::string> cycles() const {
    if (topological_order()) return {};
    // Tarjan over the parent edges.
    std::map<std::string, int> index, low;
    std::set<std::string> on_stack;
    std::vector<std::string> stack, out;
    int counter = 0;
    auto strongconnect = [&](auto&& self, const std::string& v) -> void {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack.insert(v);
      for (const auto& w : concepts_.at(v).parents) {
        if (!concepts_.contains(w)) continue;
        if (!index.contains(w)) {
          self(self, w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack.contains(w)) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] != index[v]) return;
      std::vector<std::string> component;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        component.push_back(w);
      } while (w != v);
      bool self_loop = concepts_.at(v).parents.contains(v);
      if (component.size() > 1 || self_loop)
        out.push_back(*std::min_element(component.begin(), component.end()));
    };
    for (const auto& [id, c] : concepts_)
      if (!index.contains(id)) strongconnect(strongconnect, id);
    std::sort(out.begin(), out.end());
    return out;
  }

  uint64_t version_ = 0;
  std::map<std::string, Concept> concepts_;
  std::map<std::string, PropertyDef> properties_;
  std::map<std::string, Individual> individuals_;
  std::vector<Assertion> assertions_;
  std::set<Assertion> dangling_;
  std::map<std::string, std::set<std::string>> children_;
  std::map<std::string, std::set<std::string>> typed_;
};

}  // namespace ontorec
