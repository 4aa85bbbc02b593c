#pragma once
// Side-by-side evaluation of the concept recommender and the keyword baseline.
//
// Eval spec JSON: {"k": 2, "cases": [{"name", "query", "relevant": [ids]}]}.
// The query text plays the role of a profile for both systems: the concept
// system annotates and expands it, the keyword system counts its words. Both
// corpora are indexed in one batch so every document is weighted against the
// same final statistics.

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontorec/annotation.hpp"
#include "ontorec/error.hpp"
#include "ontorec/extract.hpp"
#include "ontorec/index.hpp"
#include "ontorec/store.hpp"

namespace ontorec {

struct EvalCase {
  std::string name;
  std::string query;
  std::set<std::string> relevant;
};

struct EvalSpec {
  std::size_t k = 10;
  std::vector<EvalCase> cases;
};

inline EvalSpec eval_spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::SchemaError, "eval spec must be an object");
  EvalSpec spec;
  try {
    if (j.contains("k")) {
      if (!j.at("k").is_number_unsigned() || j.at("k").get<std::size_t>() == 0)
        throw Error(Errc::SchemaError, "k must be a positive integer");
      spec.k = j.at("k").get<std::size_t>();
    }
    for (const auto& c : j.value("cases", json::array())) {
      EvalCase ec;
      ec.name = c.value("name", "case" + std::to_string(spec.cases.size() + 1));
      ec.query = c.at("query").get<std::string>();
      ec.relevant = c.at("relevant").get<std::set<std::string>>();
      spec.cases.push_back(std::move(ec));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("eval spec: ") + e.what());
  }
  return spec;
}

struct SystemMetrics {
  std::vector<ScoredDoc> retrieved;
  std::size_t hits = 0;
  std::size_t irrelevant_retrieved = 0;
  double precision = 0.0;  // hits / k
  double recall = 0.0;     // hits / |relevant|
};

struct CaseReport {
  std::string name;
  SystemMetrics concept_system;
  SystemMetrics keyword_system;
};

struct MetricsReport {
  std::size_t k = 0;
  std::vector<CaseReport> cases;
  double concept_precision = 0.0;  // means over cases
  double concept_recall = 0.0;
  double keyword_precision = 0.0;
  double keyword_recall = 0.0;
};

inline SystemMetrics measure(std::vector<ScoredDoc> retrieved, const std::set<std::string>& relevant, std::size_t k) {
  SystemMetrics m;
  m.retrieved = std::move(retrieved);
  for (const auto& r : m.retrieved) (relevant.contains(r.doc_id) ? m.hits : m.irrelevant_retrieved)++;
  m.precision = static_cast<double>(m.hits) / static_cast<double>(k);
  m.recall = relevant.empty() ? 0.0 : static_cast<double>(m.hits) / static_cast<double>(relevant.size());
  return m;
}

// Everything eval needs from a store; annotations are the stored ones.
struct EvalCorpus {
  const KnowledgeBase& kb;
  const Gazetteer& gazetteer;
  std::span<const PatternRule> rules;
  const std::map<std::string, Document>& articles;
  const AnnotationStore& annotations;
  ExpansionConfig expansion;
};

inline MetricsReport eval_baseline(const EvalCorpus& corpus, const EvalSpec& spec) {
  if (corpus.articles.empty()) throw Error(Errc::EmptyCorpus, "store holds no articles");
  if (spec.cases.empty()) throw Error(Errc::EmptyEvalSpec, "eval spec has no cases");
  if (spec.k == 0) throw Error(Errc::SchemaError, "k must be positive");

  std::vector<std::pair<std::string, RawCounts>> concept_docs, keyword_docs;
  for (const auto& [id, doc] : corpus.articles) {
    auto it = corpus.annotations.find(id);
    const std::vector<Annotation> none;
    concept_docs.emplace_back(id, raw_counts(it == corpus.annotations.end() ? none : it->second, corpus.kb,
                                             corpus.expansion));
    keyword_docs.emplace_back(id, keyword_counts(doc));
  }
  const CorpusIndex concepts = CorpusIndex::build(concept_docs);
  const CorpusIndex keywords = CorpusIndex::build(keyword_docs);

  MetricsReport report;
  report.k = spec.k;
  for (const auto& c : spec.cases) {
    for (const auto& id : c.relevant)
      if (!corpus.articles.contains(id)) throw Error(Errc::UnknownDoc, "case " + c.name + " lists " + id);
    const Document query{"query:" + c.name, "", c.query, ""};
    const auto annotations = annotate(query, corpus.gazetteer, corpus.rules);
    const auto concept_q = concepts.tfidf(raw_counts(annotations, corpus.kb, corpus.expansion));
    const auto keyword_q = keywords.tfidf(keyword_counts(query));
    report.cases.push_back({c.name, measure(concepts.query(concept_q, spec.k), c.relevant, spec.k),
                            measure(keywords.query(keyword_q, spec.k), c.relevant, spec.k)});
  }
  const double n = static_cast<double>(report.cases.size());
  for (const auto& c : report.cases) {
    report.concept_precision += c.concept_system.precision / n;
    report.concept_recall += c.concept_system.recall / n;
    report.keyword_precision += c.keyword_system.precision / n;
    report.keyword_recall += c.keyword_system.recall / n;
  }
  return report;
}

inline MetricsReport eval_baseline(const StoreState& s, const EvalSpec& spec) {
  return eval_baseline(EvalCorpus{s.kb, *s.gazetteer, s.rules, s.articles, s.annotations, s.config.expansion()},
                       spec);
}

inline json to_json(const SystemMetrics& m) {
  json retrieved = json::array();
  for (const auto& r : m.retrieved) retrieved.push_back({{"articleId", r.doc_id}, {"score", r.score}});
  return {{"retrieved", retrieved},
          {"hits", m.hits},
          {"irrelevantRetrieved", m.irrelevant_retrieved},
          {"precisionAtK", m.precision},
          {"recallAtK", m.recall}};
}

inline json to_json(const MetricsReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"name", c.name}, {"concept", to_json(c.concept_system)}, {"keyword", to_json(c.keyword_system)}});
  return {{"k", r.k},
          {"cases", cases},
          {"concept", {{"precisionAtK", r.concept_precision}, {"recallAtK", r.concept_recall}}},
          {"keyword", {{"precisionAtK", r.keyword_precision}, {"recallAtK", r.keyword_recall}}}};
}

}  // namespace ontorec
