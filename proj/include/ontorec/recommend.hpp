#pragma once
// Daily reviews, new-entity alerts and concept digests.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontorec/annotation.hpp"
#include "ontorec/error.hpp"
#include "ontorec/index.hpp"
#include "ontorec/kbase.hpp"
#include "ontorec/kbase_json.hpp"
#include "ontorec/profile.hpp"
#include "ontorec/vector.hpp"

namespace ontorec {

inline double score(const Profile& p, const ConceptVector& article) { return similarity(p.vector, article); }

struct Review {
  std::string user_id;
  std::string date;
  std::vector<ScoredDoc> items;
  double threshold = 0.0;
  std::size_t k = 0;
};

// Top-k of the day's articles with score >= threshold; score descending, ties
// by article id.
inline Review generate_review(const Profile& p, const std::set<std::string>& daily, const CorpusIndex& index,
                              std::size_t k, double threshold, std::string date = {}) {
  Review r{p.user_id, std::move(date), {}, threshold, k};
  for (const auto& doc : daily) {
    const double s = score(p, index.vector(doc));
    if (s >= threshold) r.items.push_back({doc, s});
  }
  std::sort(r.items.begin(), r.items.end(), ranks_before);
  if (r.items.size() > k) r.items.resize(k);
  return r;
}

inline json to_json(const Review& r, const std::function<std::string(const std::string&)>& title_of) {
  json items = json::array();
  for (const auto& item : r.items)
    items.push_back({{"articleId", item.doc_id}, {"score", item.score}, {"title", title_of(item.doc_id)}});
  return {{"userId", r.user_id}, {"date", r.date}, {"items", items}};
}

struct Alert {
  std::string user_id;
  std::string individual_id;
  std::string concept_id;
  std::string triggering_article_id;
  std::string date;

  bool operator==(const Alert&) const = default;
};

inline json to_json(const Alert& a) {
  return {{"userId", a.user_id},
          {"individualId", a.individual_id},
          {"concept", a.concept_id},
          {"triggeringArticleId", a.triggering_article_id},
          {"date", a.date}};
}

inline Alert alert_from_json(const json& j) {
  try {
    return {j.at("userId").get<std::string>(), j.at("individualId").get<std::string>(),
            j.at("concept").get<std::string>(), j.at("triggeringArticleId").get<std::string>(),
            j.at("date").get<std::string>()};
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("alert: ") + e.what());
  }
}

// Sum over the individual's types of the largest profile weight found on the
// type or one of its ancestors.
inline double alert_relevance(const KnowledgeBase& kb, const std::string& individual, const Profile& p) {
  double total = 0.0;
  for (const auto& type : kb.individual_at(individual).types) {
    double best = 0.0;
    for (const auto& a : kb.ancestors(type)) {
      auto it = p.vector.find(a);
      if (it != p.vector.end()) best = std::max(best, it->second);
    }
    total += best;
  }
  return total;
}

// newIndividuals must come from this batch's population step; deduplication
// against alerts already sent is the caller's job (see Store).
inline std::vector<Alert> detect_alerts(const KnowledgeBase& kb, std::span<const std::string> new_individuals,
                                        const Profile& p, double tau, const std::string& article_id,
                                        const std::string& date) {
  std::vector<Alert> out;
  for (const auto& id : new_individuals) {
    if (alert_relevance(kb, id, p) >= tau)
      out.push_back({p.user_id, id, kb.individual_at(id).primary_type(), article_id, date});
  }
  return out;
}

struct Digest {
  std::string concept_id;
  std::vector<std::string> individuals;
  std::vector<Assertion> assertions;
  std::set<std::string> supporting_articles;
};

using AnnotationStore = std::map<std::string, std::vector<Annotation>>;

inline Digest knowledge_digest(const KnowledgeBase& kb, const AnnotationStore& annotations,
                               const std::string& concept_id) {
  Digest d;
  d.concept_id = concept_id;
  const auto members = kb.instances_of(concept_id, true);
  d.individuals.assign(members.begin(), members.end());
  for (const auto& a : kb.assertions())
    if (members.contains(a.subject)) d.assertions.push_back(a);
  for (const auto& [doc, list] : annotations)
    for (const auto& a : list)
      if (a.individual && members.contains(*a.individual)) {
        d.supporting_articles.insert(doc);
        break;
      }
  return d;
}

inline json to_json(const Digest& d) {
  json assertions = json::array();
  for (const auto& a : d.assertions) assertions.push_back(to_json(a));
  return {{"concept", d.concept_id},
          {"individuals", d.individuals},
          {"assertions", assertions},
          {"supportingArticles", d.supporting_articles}};
}

}  // namespace ontorec
