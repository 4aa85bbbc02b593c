#include <gtest/gtest.h>

#include <cmath>

#include "eval_corpora.hpp"
#include "ontorec/eval.hpp"

using namespace ontorec;

namespace {

std::vector<std::string> ids(const SystemMetrics& m) {
  std::vector<std::string> out;
  for (const auto& r : m.retrieved) out.push_back(r.doc_id);
  return out;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an ontorec::Error";
  return Errc::IoError;
}

}  // namespace

TEST(Eval, SynonymCorpus) {
  corpora::EvalStore es(corpora::eval_options(), corpora::synonym_docs());
  const auto report = eval_baseline(*es.store->snapshot(), corpora::synonym_spec());
  ASSERT_EQ(report.cases.size(), 1u);
  const auto& c = report.cases[0];
  EXPECT_EQ(c.concept_system.recall, 1.0);
  EXPECT_EQ(c.keyword_system.recall, 0.5);
  EXPECT_EQ(c.concept_system.precision, 1.0);
  EXPECT_EQ(c.keyword_system.precision, 0.5);
  EXPECT_EQ(ids(c.concept_system), (std::vector<std::string>{"s1", "s2"}));
  EXPECT_EQ(ids(c.keyword_system), (std::vector<std::string>{"s1"}));

  // s1 and s2 carry the same concept counts as the query.
  EXPECT_EQ(c.concept_system.retrieved[0].score, 1.0);
  EXPECT_EQ(c.concept_system.retrieved[1].score, 1.0);
  // Keyword cosine by hand: the query is {rachat}; s1 is {le, rachat, est, confirmé}
  // with df le = 2, rachat = 1, est = 3, confirmé = 1 over N = 4.
  const double l2 = std::log(2.0), l4 = std::log(4.0), l43 = std::log(4.0 / 3.0);
  const double expected = l4 / std::sqrt(l2 * l2 + l4 * l4 + l43 * l43 + l4 * l4);
  EXPECT_NEAR(c.keyword_system.retrieved[0].score, expected, 1e-9);
}

TEST(Eval, PolysemyCorpus) {
  corpora::EvalStore es(corpora::eval_options(), corpora::polysemy_docs());
  const auto report = eval_baseline(*es.store->snapshot(), corpora::polysemy_spec());
  const auto& c = report.cases.at(0);
  EXPECT_EQ(ids(c.concept_system), (std::vector<std::string>{"p1"}));
  EXPECT_EQ(c.concept_system.irrelevant_retrieved, 0u);
  EXPECT_EQ(ids(c.keyword_system), (std::vector<std::string>{"p1", "p2"}));
  EXPECT_GE(c.keyword_system.irrelevant_retrieved, 1u);
  EXPECT_EQ(c.concept_system.recall, 1.0);
}

TEST(Eval, OneToOneLexiconGivesIdenticalRankings) {
  oracle::Rng rng(83);
  auto setup = corpora::one_to_one_lexicon();
  for (int corpus = 0; corpus < 5; ++corpus) {
    corpora::EvalStore es(setup.options, corpora::one_to_one_docs(rng, setup.words, 40));
    EvalSpec spec;
    spec.k = 10;
    for (int q = 0; q < 20; ++q) {
      std::string query = rng.pick(setup.words);
      if (rng.chance(0.5)) query += " " + rng.pick(setup.words);
      spec.cases.push_back({"q" + std::to_string(q), query, {"d0"}});
    }
    const auto report = eval_baseline(*es.store->snapshot(), spec);
    for (const auto& c : report.cases) {
      ASSERT_EQ(c.concept_system.retrieved.size(), c.keyword_system.retrieved.size()) << c.name;
      for (std::size_t i = 0; i < c.concept_system.retrieved.size(); ++i)
        EXPECT_EQ(c.concept_system.retrieved[i], c.keyword_system.retrieved[i]);
    }
    EXPECT_EQ(report.concept_recall, report.keyword_recall);
  }
}

TEST(Eval, Errors) {
  corpora::EvalStore empty(corpora::eval_options(), {});
  EXPECT_EQ(code_of([&] { eval_baseline(*empty.store->snapshot(), corpora::synonym_spec()); }), Errc::EmptyCorpus);
  corpora::EvalStore es(corpora::eval_options(), corpora::synonym_docs());
  EXPECT_EQ(code_of([&] { eval_baseline(*es.store->snapshot(), EvalSpec{2, {}}); }), Errc::EmptyEvalSpec);
  EXPECT_EQ(code_of([&] { eval_baseline(*es.store->snapshot(), EvalSpec{2, {{"x", "rachat", {"nope"}}}}); }),
            Errc::UnknownDoc);
  EXPECT_EQ(code_of([] { eval_spec_from_json(json{{"k", 0}, {"cases", json::array()}}); }), Errc::SchemaError);
  EXPECT_EQ(code_of([] { eval_spec_from_json(json{{"cases", {{{"name", "x"}}}}}); }), Errc::SchemaError);
}

TEST(Eval, SpecAndReportJson) {
  const auto spec = eval_spec_from_json(json::parse(
      R"({"k": 2, "cases": [{"name": "takeover", "query": "rachat", "relevant": ["s1", "s2"]}]})"));
  EXPECT_EQ(spec.k, 2u);
  ASSERT_EQ(spec.cases.size(), 1u);
  EXPECT_EQ(spec.cases[0].relevant, (std::set<std::string>{"s1", "s2"}));

  corpora::EvalStore es(corpora::eval_options(), corpora::synonym_docs());
  const json j = to_json(eval_baseline(*es.store->snapshot(), spec));
  EXPECT_EQ(j.at("concept").at("recallAtK"), 1.0);
  EXPECT_EQ(j.at("keyword").at("recallAtK"), 0.5);
  EXPECT_EQ(j.at("cases").at(0).at("keyword").at("irrelevantRetrieved"), 0);
}
