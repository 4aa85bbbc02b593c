#pragma once
// User profiles: unit-length concept vectors seeded from subscription criteria
// and moved by explicit ratings and reading signals.
//
// Update rule, with v̂ the normalized article vector, s the signal strength
// and alpha the learning rate:
//   s > 0:  p' = normalize((1 - alpha*s) p + alpha*s v̂)
//   s < 0:  p' = normalize(max(0, p - alpha*|s| v̂))   per dimension
//   s = 0:  p' = p
// A profile driven to the zero vector falls back to its seed vector.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ontorec/error.hpp"
#include "ontorec/kbase.hpp"
#include "ontorec/vector.hpp"

namespace ontorec {

struct ExplicitRating {
  int rating = 1;  // -1 or +1
  bool operator==(const ExplicitRating&) const = default;
};

struct ImplicitSignal {
  std::string signal;  // opened, readLong, skipped
  bool operator==(const ImplicitSignal&) const = default;
};

using FeedbackKind = std::variant<ExplicitRating, ImplicitSignal>;

struct FeedbackEvent {
  std::string user_id;
  std::string article_id;
  FeedbackKind kind;
  std::string timestamp;
  // Recorded when the event is applied so replay does not depend on config.
  double strength = 0.0;
  double alpha = 0.0;
};

struct FeedbackConfig {
  double alpha = 0.3;
  std::map<std::string, double> implicit{{"opened", 0.2}, {"readLong", 0.5}, {"skipped", -0.1}};
};

struct Profile {
  std::string user_id;
  ConceptVector vector;
  std::set<std::string> seeds;
  std::vector<FeedbackEvent> history;
  std::string updated_at;
};

inline ConceptVector seed_vector(const std::set<std::string>& seeds) {
  ConceptVector v;
  const double w = 1.0 / std::sqrt(static_cast<double>(seeds.size()));
  for (const auto& s : seeds) v.emplace(s, w);
  return v;
}

inline Profile init_profile(const std::string& user_id, const std::set<std::string>& seeds,
                            const KnowledgeBase& kb) {
  if (seeds.empty()) throw Error(Errc::EmptySeeds, "profile " + user_id + " needs at least one seed");
  for (const auto& s : seeds)
    if (!kb.has_concept(s)) throw Error(Errc::UnknownConcept, s);
  Profile p;
  p.user_id = user_id;
  p.seeds = seeds;
  p.vector = seed_vector(seeds);
  return p;
}

inline double signal_strength(const FeedbackKind& kind, const FeedbackConfig& config) {
  if (const auto* r = std::get_if<ExplicitRating>(&kind)) {
    if (r->rating != 1 && r->rating != -1)
      throw Error(Errc::UnknownSignalKind, "explicit rating must be -1 or +1");
    return r->rating;
  }
  const auto& signal = std::get<ImplicitSignal>(kind).signal;
  auto it = config.implicit.find(signal);
  if (it == config.implicit.end()) throw Error(Errc::UnknownSignalKind, "'" + signal + "'");
  return it->second;
}

// "explicit" (with rating) or one of the implicit signal names.
inline FeedbackKind parse_feedback_kind(const std::string& kind, std::optional<int> rating) {
  if (kind == "explicit") {
    if (!rating) throw Error(Errc::UnknownSignalKind, "explicit feedback needs a rating");
    return ExplicitRating{*rating};
  }
  if (kind.empty()) throw Error(Errc::UnknownSignalKind, "empty feedback kind");
  return ImplicitSignal{kind};
}

inline ConceptVector updated_vector(const ConceptVector& profile, const std::set<std::string>& seeds,
                                    const ConceptVector& article, double strength, double alpha) {
  if (article.empty()) throw Error(Errc::EmptyArticleVector, "article has no concept weights");
  if (strength == 0.0) return profile;
  const ConceptVector unit = normalized(article);
  ConceptVector blended;
  if (strength > 0.0) {
    const double step = alpha * strength;
    blended = scaled(profile, 1.0 - step);
    for (const auto& [c, w] : unit) {
      const double x = blended[c] + step * w;
      if (x > 0.0)
        blended[c] = x;
      else
        blended.erase(c);
    }
  } else {
    const double step = alpha * -strength;
    for (const auto& [c, w] : profile) {
      auto it = unit.find(c);
      const double x = w - (it == unit.end() ? 0.0 : step * it->second);
      if (x > 0.0) blended.emplace(c, x);
    }
  }
  ConceptVector out = normalized(blended);
  return out.empty() ? seed_vector(seeds) : out;
}

// Applies the event (whose strength and alpha must be filled in) and appends it.
inline void apply_feedback(Profile& p, const ConceptVector& article, FeedbackEvent event) {
  if (event.alpha <= 0.0 || event.alpha > 1.0)
    throw Error(Errc::ConfigError, "learning rate must lie in (0, 1]");
  p.vector = updated_vector(p.vector, p.seeds, article, event.strength, event.alpha);
  if (!event.timestamp.empty()) p.updated_at = event.timestamp;
  p.history.push_back(std::move(event));
}

// Rebuilds the vector from the seeds and the recorded history.
inline ConceptVector replay(const Profile& p,
                            const std::function<const ConceptVector&(const std::string&)>& article_vector) {
  ConceptVector v = seed_vector(p.seeds);
  for (const auto& e : p.history) v = updated_vector(v, p.seeds, article_vector(e.article_id), e.strength, e.alpha);
  return v;
}

// ---- JSON ----------------------------------------------------------------

inline json to_json(const FeedbackEvent& e) {
  json j = {{"userId", e.user_id},   {"articleId", e.article_id}, {"timestamp", e.timestamp},
            {"strength", e.strength}, {"alpha", e.alpha}};
  if (const auto* r = std::get_if<ExplicitRating>(&e.kind)) {
    j["kind"] = "explicit";
    j["rating"] = r->rating;
  } else {
    j["kind"] = std::get<ImplicitSignal>(e.kind).signal;
  }
  return j;
}

inline FeedbackEvent feedback_from_json(const json& j) {
  try {
    FeedbackEvent e;
    e.user_id = j.value("userId", "");
    e.article_id = j.at("articleId").get<std::string>();
    std::optional<int> rating;
    if (j.contains("rating") && !j.at("rating").is_null()) rating = j.at("rating").get<int>();
    e.kind = parse_feedback_kind(j.at("kind").get<std::string>(), rating);
    e.timestamp = j.value("timestamp", "");
    e.strength = j.value("strength", 0.0);
    e.alpha = j.value("alpha", 0.0);
    return e;
  } catch (const json::exception& ex) {
    throw Error(Errc::SchemaError, std::string("feedback: ") + ex.what());
  }
}

inline json to_json(const Profile& p) {
  json history = json::array();
  for (const auto& e : p.history) history.push_back(to_json(e));
  return {{"userId", p.user_id},
          {"seeds", p.seeds},
          {"vector", to_json(p.vector)},
          {"history", history},
          {"updatedAt", p.updated_at}};
}

inline Profile profile_from_json(const json& j) {
  try {
    Profile p;
    p.user_id = j.at("userId").get<std::string>();
    for (const auto& s : j.at("seeds")) p.seeds.insert(s.get<std::string>());
    p.vector = sparse_from_json(j.at("vector"));
    for (const auto& e : j.value("history", json::array())) p.history.push_back(feedback_from_json(e));
    p.updated_at = j.value("updatedAt", "");
    return p;
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("profile: ") + e.what());
  }
}

}  // namespace ontorec
