#pragma once
// Small constructed corpora for the concept-vs-keyword comparison.

#include <memory>
#include <string>
#include <vector>

#include "generators.hpp"
#include "ontorec/eval.hpp"
#include "store_helpers.hpp"

namespace corpora {

using ontorec::Document;
using ontorec::EvalSpec;

inline ontorec::InitOptions eval_options() {
  auto options = testing_store::economic_options();
  options.kb.add_concept({"domain:FinancialMarket", "Financial market", {"domain:EconomicSector"}});
  options.lexicon.push_back({"marché public", "domain:PublicTender", false});
  options.lexicon.push_back({"marché financier", "domain:FinancialMarket", false});
  return options;
}

// Two surfaces of one concept; the query uses only one of them.
inline std::vector<Document> synonym_docs() {
  using testing_store::doc;
  return {doc("s1", "", "Le rachat est confirmé."), doc("s2", "", "Une acquisition est confirmée."),
          doc("s3", "", "La météo est clémente."), doc("s4", "", "Le tournoi de football commence.")};
}

inline EvalSpec synonym_spec() { return {2, {{"takeover", "rachat", {"s1", "s2"}}}}; }

// One surface word shared by two unrelated concepts.
inline std::vector<Document> polysemy_docs() {
  using testing_store::doc;
  return {doc("p1", "", "Un marché public est lancé."), doc("p2", "", "Le marché financier recule."),
          doc("p3", "", "La météo est clémente.")};
}

inline EvalSpec polysemy_spec() { return {2, {{"tender", "marché public", {"p1"}}}}; }

// A store in its own temporary directory.
struct EvalStore {
  testing_store::TempDir dir;
  std::unique_ptr<ontorec::Store> store;

  EvalStore(const ontorec::InitOptions& options, const std::vector<Document>& docs) {
    ontorec::Store::initialize(dir.path(), options);
    store = std::make_unique<ontorec::Store>(dir.path(), testing_store::no_env());
    for (const auto& d : docs) store->ingest(d);
  }
};

// Every word is its own concept with no hierarchy and no rules.
struct OneToOne {
  ontorec::InitOptions options;
  std::vector<std::string> words;
};

inline OneToOne one_to_one_lexicon() {
  OneToOne out;
  out.words = {"marché", "banque", "usine", "rachat", "emploi", "crise", "été", "ville", "port", "acier",
               "prix", "export", "grève", "taux", "dette", "impôt", "région", "énergie", "vin", "bois"};
  out.options.kb.add_concept({"upper:Thing", "Thing", {}});
  for (std::size_t i = 0; i < out.words.size(); ++i) {
    const std::string id = "domain:w" + std::to_string(i);
    out.options.kb.add_concept({id, out.words[i], {}});
    out.options.lexicon.push_back({out.words[i], id, false});
  }
  out.options.rules.clear();
  return out;
}

inline std::vector<Document> one_to_one_docs(oracle::Rng& rng, const std::vector<std::string>& words, int n) {
  std::vector<Document> docs;
  for (int d = 0; d < n; ++d) {
    std::string body;
    const int len = rng.between(1, 12);
    for (int t = 0; t < len; ++t) body += (t ? " " : "") + rng.pick(words);
    docs.push_back(testing_store::doc("d" + std::to_string(d), "", body));
  }
  return docs;
}

}  // namespace corpora
