#pragma once
// Concept-vector indexing: hierarchy-expanded concept counts, TF-IDF weights,
// an inverted index with cosine ranking, and the plain keyword baseline.
//
// Weights use tf = 1 + ln(count) and idf = ln(N / df). Vectors are frozen at
// insertion time with the N and df current at that moment (including the
// document being inserted), rounded to 12 significant digits.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ontorec/annotation.hpp"
#include "ontorec/error.hpp"
#include "ontorec/kbase.hpp"
#include "ontorec/pattern.hpp"
#include "ontorec/tokenize.hpp"
#include "ontorec/unicode.hpp"
#include "ontorec/vector.hpp"

namespace ontorec {

using RawCounts = std::map<std::string, double>;

struct ExpansionConfig {
  double gamma = 0.5;  // decay per subclass step, in (0, 1]
  bool expand = true;
  std::string temporal_concept = kTemporalConcept;
};

inline bool vector_layer(Layer l) { return l == Layer::Domain || l == Layer::Upper; }

// Each annotation adds 1 to its concept and gamma^d to every strict ancestor
// at shortest distance d. Only upper/domain concepts count; temporal
// annotations are left out (they are article metadata, not vector terms).
inline RawCounts raw_counts(std::span<const Annotation> annotations, const KnowledgeBase& kb,
                            const ExpansionConfig& config = {}) {
  RawCounts counts;
  const bool has_temporal = kb.has_concept(config.temporal_concept);
  std::map<std::string, std::map<std::string, int>> distances;
  for (const auto& a : annotations) {
    if (!kb.has_concept(a.concept_id)) throw Error(Errc::UnknownConcept, a.concept_id);
    if (!vector_layer(kb.concept_at(a.concept_id).layer())) continue;
    auto cached = distances.find(a.concept_id);
    if (cached == distances.end())
      cached = distances.emplace(a.concept_id, kb.ancestor_distances(a.concept_id)).first;
    const auto& dist = cached->second;
    if (has_temporal && dist.contains(config.temporal_concept)) continue;

    counts[a.concept_id] += 1.0;
    if (!config.expand) continue;
    for (const auto& [ancestor, d] : dist) {
      if (d == 0 || !vector_layer(kb.concept_at(ancestor).layer())) continue;
      counts[ancestor] += std::pow(config.gamma, d);
    }
  }
  return counts;
}

// 0 when the term is absent from the corpus or present everywhere.
inline double tfidf_weight(double count, std::size_t n_docs, std::size_t df) {
  if (count <= 0.0 || df == 0 || n_docs == 0) return 0.0;
  const double w = (1.0 + std::log(count)) * std::log(static_cast<double>(n_docs) / static_cast<double>(df));
  return w > 0.0 ? w : 0.0;
}

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;
  bool operator==(const ScoredDoc&) const = default;
};

// Score descending, then doc id ascending.
inline bool ranks_before(const ScoredDoc& a, const ScoredDoc& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

class CorpusIndex {
 public:
  std::size_t size() const { return vectors_.size(); }

  std::size_t df(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : it->second.size();
  }

  const std::map<std::string, SparseVector>& vectors() const { return vectors_; }
  const std::map<std::string, std::set<std::string>>& postings() const { return postings_; }
  bool contains(const std::string& doc_id) const { return vectors_.contains(doc_id); }

  const SparseVector& vector(const std::string& doc_id) const {
    auto it = vectors_.find(doc_id);
    if (it == vectors_.end()) throw Error(Errc::UnknownDoc, doc_id);
    return it->second;
  }

  // Weights of counts against the current statistics.
  SparseVector tfidf(const RawCounts& counts) const {
    if (size() == 0) throw Error(Errc::EmptyCorpus, "index holds no documents");
    SparseVector out;
    for (const auto& [term, count] : counts) {
      const double w = tfidf_weight(count, size(), df(term));
      if (w > 0.0) out.emplace(term, w);
    }
    return out;
  }

  // Store a ready-made vector; its support updates df and the postings.
  void index_article(const std::string& doc_id, const SparseVector& vector) {
    if (contains(doc_id)) throw Error(Errc::DuplicateDoc, doc_id);
    SparseVector frozen;
    for (const auto& [term, w] : vector)
      if (w > 0.0) frozen.emplace(term, round_weight(w));
    for (const auto& [term, w] : frozen) postings_[term].insert(doc_id);
    vectors_.emplace(doc_id, std::move(frozen));
  }

  // Register the document's terms, then weight its counts against the updated
  // statistics. Terms whose weight comes out zero (present in every document)
  // stay in the postings but not in the stored vector.
  const SparseVector& index_counts(const std::string& doc_id, const RawCounts& counts) {
    if (contains(doc_id)) throw Error(Errc::DuplicateDoc, doc_id);
    CorpusIndex next = *this;
    next.vectors_.emplace(doc_id, SparseVector{});
    for (const auto& [term, count] : counts)
      if (count > 0.0) next.postings_[term].insert(doc_id);
    SparseVector frozen;
    for (const auto& [term, w] : next.tfidf(counts)) frozen.emplace(term, round_weight(w));
    next.vectors_[doc_id] = std::move(frozen);
    *this = std::move(next);
    return vectors_.at(doc_id);
  }

  // Two-pass build: document frequencies over the whole batch first, then
  // every vector against the final statistics.
  static CorpusIndex build(const std::vector<std::pair<std::string, RawCounts>>& docs) {
    CorpusIndex index;
    for (const auto& [doc_id, counts] : docs) {
      if (!index.vectors_.emplace(doc_id, SparseVector{}).second) throw Error(Errc::DuplicateDoc, doc_id);
      for (const auto& [term, count] : counts)
        if (count > 0.0) index.postings_[term].insert(doc_id);
    }
    for (const auto& [doc_id, counts] : docs) {
      SparseVector frozen;
      for (const auto& [term, w] : index.tfidf(counts)) frozen.emplace(term, round_weight(w));
      index.vectors_[doc_id] = std::move(frozen);
    }
    return index;
  }

  // Top-k documents by similarity() among those sharing a term with q (score > 0).
  std::vector<ScoredDoc> query(const SparseVector& q, std::size_t k) const {
    std::set<std::string> candidates;
    for (const auto& [term, w] : q) {
      auto it = postings_.find(term);
      if (it != postings_.end()) candidates.insert(it->second.begin(), it->second.end());
    }
    std::vector<ScoredDoc> scored;
    for (const auto& doc : candidates) {
      const double s = similarity(q, vectors_.at(doc));
      if (s > 0.0) scored.push_back({doc, s});
    }
    std::sort(scored.begin(), scored.end(), ranks_before);
    if (scored.size() > k) scored.resize(k);
    return scored;
  }

  json to_json() const {
    json df_json = json::object(), vectors_json = json::object(), postings_json = json::object();
    for (const auto& [term, docs] : postings_) {
      df_json[term] = docs.size();
      postings_json[term] = docs;
    }
    for (const auto& [doc, v] : vectors_) vectors_json[doc] = ontorec::to_json(v);
    return {{"N", size()}, {"df", df_json}, {"vectors", vectors_json}, {"postings", postings_json}};
  }

  static CorpusIndex from_json(const json& j) {
    try {
      CorpusIndex index;
      for (const auto& [doc, v] : j.at("vectors").items()) index.vectors_.emplace(doc, sparse_from_json(v));
      if (j.contains("postings")) {
        for (const auto& [term, docs] : j.at("postings").items())
          for (const auto& d : docs) index.postings_[term].insert(d.get<std::string>());
      } else {
        for (const auto& [doc, v] : index.vectors_)
          for (const auto& [term, w] : v) index.postings_[term].insert(doc);
      }
      if (j.at("N").get<std::size_t>() != index.size())
        throw Error(Errc::SchemaError, "index N does not match the stored vectors");
      for (const auto& [term, n] : j.at("df").items())
        if (n.get<std::size_t>() != index.df(term))
          throw Error(Errc::SchemaError, "index df mismatch for " + term);
      return index;
    } catch (const json::exception& e) {
      throw Error(Errc::SchemaError, std::string("index: ") + e.what());
    }
  }

  // Every posting names an indexed document and every stored weight has a posting.
  bool consistent() const {
    for (const auto& [term, docs] : postings_) {
      if (docs.empty()) return false;
      for (const auto& d : docs)
        if (!vectors_.contains(d)) return false;
    }
    for (const auto& [doc, v] : vectors_)
      for (const auto& [term, w] : v) {
        if (w <= 0.0) return false;
        auto it = postings_.find(term);
        if (it == postings_.end() || !it->second.contains(doc)) return false;
      }
    return true;
  }

 private:
  std::map<std::string, SparseVector> vectors_;
  std::map<std::string, std::set<std::string>> postings_;
};

// ---- keyword baseline --------------------------------------------------------

// Case-folded word-token counts of title and body.
inline RawCounts keyword_counts(const Document& doc) {
  RawCounts counts;
  for (const auto& t : tokenize(doc.text()))
    if (t.kind == TokenKind::Word) counts[unicode::fold(t.text)] += 1.0;
  return counts;
}

inline KeywordVector keyword_vector(const Document& doc, const CorpusIndex& keyword_index) {
  return keyword_index.tfidf(keyword_counts(doc));
}

}  // namespace ontorec
