#pragma once
// Documents and stand-off annotations, plus overlap resolution.

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "ontorec/date.hpp"
#include "ontorec/error.hpp"

namespace ontorec {

using json = nlohmann::json;

struct Document {
  std::string id;
  std::string title;
  std::string body;
  std::string published_date;  // YYYY-MM-DD

  // The text annotation offsets refer to.
  std::string text() const { return title + "\n" + body; }
  bool operator==(const Document&) const = default;
};

inline json to_json(const Document& d) {
  return {{"id", d.id}, {"title", d.title}, {"body", d.body}, {"publishedDate", d.published_date}};
}

inline Document document_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::SchemaError, "article must be a JSON object");
  auto str = [&](const char* key, bool required) -> std::string {
    if (!j.contains(key)) {
      if (required) throw Error(Errc::SchemaError, std::string("article is missing '") + key + "'");
      return {};
    }
    if (!j.at(key).is_string()) throw Error(Errc::SchemaError, std::string("'") + key + "' must be a string");
    return j.at(key).get<std::string>();
  };
  Document d{str("id", true), str("title", false), str("body", false), str("publishedDate", true)};
  if (d.id.empty()) throw Error(Errc::SchemaError, "article id is empty");
  if (!is_iso_date(d.published_date))
    throw Error(Errc::SchemaError, "publishedDate '" + d.published_date + "' is not YYYY-MM-DD");
  return d;
}

enum class AnnotationSource { Gazetteer, Pattern };

inline constexpr int kGazetteerPriority = INT_MAX;

struct Annotation {
  std::string doc_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string concept_id;
  std::optional<std::string> individual;
  AnnotationSource source = AnnotationSource::Gazetteer;
  std::optional<std::string> rule_name;
  std::optional<std::string> normalized_value;
  // Not serialized: only meaningful while competing matches are resolved.
  int priority = kGazetteerPriority;

  std::size_t length() const { return end - start; }
  bool overlaps(const Annotation& o) const { return start < o.end && o.start < end; }

  bool operator==(const Annotation& o) const {
    return std::tie(doc_id, start, end, concept_id, individual, source, rule_name, normalized_value) ==
           std::tie(o.doc_id, o.start, o.end, o.concept_id, o.individual, o.source, o.rule_name,
                    o.normalized_value);
  }
};

// Stable id of the n-th annotation of a document.
inline std::string annotation_id(const std::string& doc_id, std::size_t ordinal) {
  return doc_id + "#" + std::to_string(ordinal);
}

inline json to_json(const Annotation& a) {
  auto opt = [](const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); };
  return {{"docId", a.doc_id},
          {"span", {a.start, a.end}},
          {"concept", a.concept_id},
          {"individual", opt(a.individual)},
          {"source", a.source == AnnotationSource::Gazetteer ? "gazetteer" : "pattern"},
          {"ruleName", opt(a.rule_name)},
          {"normalizedValue", opt(a.normalized_value)}};
}

inline Annotation annotation_from_json(const json& j) {
  try {
    Annotation a;
    a.doc_id = j.at("docId").get<std::string>();
    a.start = j.at("span").at(0).get<std::size_t>();
    a.end = j.at("span").at(1).get<std::size_t>();
    a.concept_id = j.at("concept").get<std::string>();
    auto opt = [&](const char* key) -> std::optional<std::string> {
      if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
      return j.at(key).get<std::string>();
    };
    a.individual = opt("individual");
    a.rule_name = opt("ruleName");
    a.normalized_value = opt("normalizedValue");
    const auto source = j.at("source").get<std::string>();
    if (source == "gazetteer")
      a.source = AnnotationSource::Gazetteer;
    else if (source == "pattern")
      a.source = AnnotationSource::Pattern;
    else
      throw Error(Errc::SchemaError, "unknown annotation source '" + source + "'");
    if (a.start >= a.end) throw Error(Errc::SchemaError, "empty annotation span");
    return a;
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("annotation: ") + e.what());
  }
}

// Strict "a beats b" order among competing annotations: longer span, then
// individual-bearing, then higher priority, then leftmost, then smaller rule
// name. The trailing keys only make the order total.
inline bool outranks(const Annotation& a, const Annotation& b) {
  auto key = [](const Annotation& x) {
    return std::make_tuple(-static_cast<long long>(x.length()), x.individual ? 0 : 1, -static_cast<long long>(x.priority),
                           x.start, x.rule_name.value_or(""), x.concept_id, x.individual.value_or(""),
                           x.source, x.normalized_value.value_or(""));
  };
  return key(a) < key(b);
}

// Pairwise non-overlapping subset of the input, sorted by start offset.
inline std::vector<Annotation> resolve_overlaps(std::vector<Annotation> candidates) {
  std::sort(candidates.begin(), candidates.end(), outranks);
  std::vector<Annotation> kept;
  for (auto& c : candidates) {
    bool clash = std::any_of(kept.begin(), kept.end(), [&](const Annotation& k) { return k.overlaps(c); });
    if (!clash) kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Annotation& a, const Annotation& b) { return a.start < b.start; });
  return kept;
}

}  // namespace ontorec
