// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "eval_corpora.hpp"
#include "generators.hpp"
#include "news.hpp"
#include "ontorec/ontorec.hpp"
#include "oracles.hpp"
#include "store_helpers.hpp"

using namespace ontorec;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures of a check.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 5) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& detail) const {
    if (failures_ == 0) return {true, detail};
    return {false, std::to_string(failures_) + " failure(s): " + notes_.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string node(int i) { return "domain:n" + std::to_string(i); }

InitOptions sample_options() {
  const fs::path samples = ONTOREC_SAMPLES;
  InitOptions options;
  options.kb = load_ontology(samples / "ontology");
  options.lexicon = lexicon_from_json(storefs::read_json(samples / "lexicon.json"));
  options.rules = rules_from_json(storefs::read_json(samples / "rules.json"));
  options.config = config_from_json(storefs::read_json(samples / "config.json"));
  return options;
}

std::vector<Document> sample_articles() {
  std::vector<Document> out;
  for (const auto& j : storefs::read_json(fs::path(ONTOREC_SAMPLES) / "articles.json"))
    out.push_back(document_from_json(j));
  return out;
}

Outcome extraction() {
  Check c;
  oracle::Rng rng(2011);
  std::size_t matches = 0;
  const auto t0 = Clock::now();
  for (int doc = 0; doc < 1000; ++doc) {
    auto g = gen::random_gazetteer(rng, 100);
    const std::string text = gen::random_text(rng, 50);
    const auto tokens = tokenize(std::string_view(text));
    const auto got = Gazetteer(g.lexicon, g.kb).match(tokens);
    const auto want = oracle::brute_force_gazetteer(tokens, g.oracle_entries);
    bool same = got.size() == want.size();
    for (std::size_t i = 0; same && i < got.size(); ++i)
      same = got[i].start == want[i].start && got[i].end == want[i].end &&
             got[i].concept_id == want[i].concept_id && got[i].individual == want[i].individual;
    c.expect(same, "discrepancy on \"" + text + "\"");
    matches += got.size();
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 10.0, "took " + fmt("%.2f s", elapsed));
  return c.done("1000 docs, " + std::to_string(matches) + " matches, 0 discrepancies, " + fmt("%.2f s", elapsed));
}

Outcome closure() {
  Check c;
  oracle::Rng rng(2012);
  std::size_t pairs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_dag(rng, 200, 400);
    KnowledgeBase kb;
    for (int i = 0; i < g.nodes; ++i) kb.add_concept({node(i), "", {}});
    for (auto [child, parent] : g.edges) kb.add_subclass_axiom(node(child), node(parent));
    std::map<std::string, std::vector<int>> types;
    for (int i = 0; i < 40; ++i) {
      std::set<int> ts;
      for (int t = rng.between(1, 3); t > 0; --t) ts.insert(rng.between(0, g.nodes - 1));
      Individual ind{"domain:i" + std::to_string(i), "", {}};
      for (int t : ts) ind.types.push_back(node(t));
      types[ind.id].assign(ts.begin(), ts.end());
      kb.add_individual(ind);
    }
    const auto up = oracle::upward(g.edges);
    std::vector<std::set<int>> reach(g.nodes);
    for (int i = 0; i < g.nodes; ++i) reach[i] = oracle::reachable(i, up);
    for (int i = 0; i < g.nodes; ++i) {
      std::set<std::string> ancestors;
      for (int r : reach[i]) ancestors.insert(node(r));
      c.expect(kb.ancestors(node(i)) == ancestors, "ancestors of " + node(i) + " in DAG " + std::to_string(trial));
      std::set<std::string> instances;
      for (const auto& [id, ts] : types)
        for (int t : ts)
          if (reach[t].contains(i)) instances.insert(id);
      c.expect(kb.instances_of(node(i), true) == instances,
               "instances of " + node(i) + " in DAG " + std::to_string(trial));
      pairs += ancestors.size();
    }
  }
  return c.done("100 DAGs, " + std::to_string(pairs) + " ancestor pairs agree with BFS");
}

Outcome vector_math() {
  Check c;
  constexpr double kTfidf = 2.34720038895629346816866929557;  // (1 + ln 2) * ln 4
  constexpr double kInvSqrt2 = 0.707106781186547524400844362105;
  CorpusIndex index;
  index.index_article("d1", {{"everywhere", 1.0}, {"t", 1.0}});
  index.index_article("d2", {{"everywhere", 1.0}});
  index.index_article("d3", {{"everywhere", 1.0}});
  index.index_article("d4", {{"everywhere", 1.0}});
  const auto v = index.tfidf({{"t", 2.0}, {"everywhere", 5.0}});
  c.expect(v.contains("t") && std::abs(v.at("t") - kTfidf) <= 1e-9, "tfidf(N=4, df=1, count=2)");
  c.expect(!v.contains("everywhere"), "idf-zero term kept in the vector");
  const double cos = cosine({{"a", 1.0}, {"b", 1.0}}, {{"a", 1.0}});
  c.expect(std::abs(cos - kInvSqrt2) <= 1e-9, "cos((1,1),(1,0)) = " + fmt("%.17g", cos));
  return c.done("tfidf " + fmt("%.12f", v.contains("t") ? v.at("t") : 0.0) + ", cosine " + fmt("%.12f", cos) +
                ", idf-zero term omitted");
}

Outcome ranking() {
  Check c;
  oracle::Rng rng(2013);
  std::size_t lists = 0;
  for (int corpus = 0; corpus < 5; ++corpus) {
    CorpusIndex index;
    std::map<std::string, oracle::Vec> all, daily_vectors;
    std::set<std::string> daily;
    const int n = corpus == 0 ? 500 : rng.between(1, 500);
    for (int d = 0; d < n; ++d) {
      const std::string id = "art" + std::to_string(d);
      // Few dimensions so exact score ties are common.
      index.index_article(id, gen::random_vector(rng, corpus % 2 ? 4 : 25, 0.3));
      all[id] = index.vector(id);
      if (rng.chance(0.6)) {
        daily.insert(id);
        daily_vectors[id] = index.vector(id);
      }
    }
    for (int u = 0; u < 100; ++u) {
      Profile p;
      p.user_id = "u" + std::to_string(u);
      p.vector = normalized(gen::random_vector(rng, corpus % 2 ? 4 : 25, 0.3));
      const std::size_t k = static_cast<std::size_t>(rng.between(0, 40));
      const double theta = rng.between(0, 20) / 40.0;
      const auto score = [&](const oracle::Vec& x) { return oracle::round12(oracle::cosine(p.vector, x)); };

      const auto want_review = oracle::full_scan(daily_vectors, score, theta, false, k);
      const auto got_review = generate_review(p, daily, index, k, theta);
      bool same = got_review.items.size() == want_review.size();
      for (std::size_t i = 0; same && i < want_review.size(); ++i)
        same = got_review.items[i].doc_id == want_review[i].id && got_review.items[i].score == want_review[i].score;
      c.expect(same, "review differs for " + p.user_id + " in corpus " + std::to_string(corpus));

      const auto want_query = oracle::full_scan(all, score, 0.0, true, k);
      const auto got_query = index.query(p.vector, k);
      same = got_query.size() == want_query.size();
      for (std::size_t i = 0; same && i < want_query.size(); ++i)
        same = got_query[i].doc_id == want_query[i].id && got_query[i].score == want_query[i].score;
      c.expect(same, "query differs for " + p.user_id + " in corpus " + std::to_string(corpus));
      lists += 2;
    }
  }
  return c.done(std::to_string(lists) + " ranked lists equal the full-scan oracle, ties by ascending id");
}

Outcome synonymy_polysemy() {
  Check c;
  std::ostringstream detail;
  {
    corpora::EvalStore s(corpora::eval_options(), corpora::synonym_docs());
    const auto report = eval_baseline(*s.store->snapshot(), corpora::synonym_spec());
    const auto& r = report.cases.at(0);
    c.expect(r.concept_system.recall == 1.0, "concept recall " + fmt("%g", r.concept_system.recall));
    c.expect(r.keyword_system.recall == 0.5, "keyword recall " + fmt("%g", r.keyword_system.recall));
    detail << "synonymy recall concept " << r.concept_system.recall << " vs keyword " << r.keyword_system.recall;
  }
  {
    corpora::EvalStore s(corpora::eval_options(), corpora::polysemy_docs());
    const auto report = eval_baseline(*s.store->snapshot(), corpora::polysemy_spec());
    const auto& r = report.cases.at(0);
    c.expect(r.keyword_system.irrelevant_retrieved >= 1,
             "keyword irrelevant " + std::to_string(r.keyword_system.irrelevant_retrieved));
    c.expect(r.concept_system.irrelevant_retrieved == 0,
             "concept irrelevant " + std::to_string(r.concept_system.irrelevant_retrieved));
    detail << "; polysemy irrelevant concept " << r.concept_system.irrelevant_retrieved << " vs keyword "
           << r.keyword_system.irrelevant_retrieved;
  }
  return c.done(detail.str());
}

double l2(const ConceptVector& v) {
  double s = 0;
  for (const auto& [k, w] : v) s += w * w;
  return std::sqrt(s);
}

Outcome feedback_loop() {
  Check c;
  oracle::Rng rng(2014);
  std::map<std::string, ConceptVector> articles;
  for (int i = 0; i < 30; ++i) {
    auto v = gen::random_vector(rng, 12, 0.4);
    if (v.empty()) v["t" + std::to_string(i % 12)] = 1.0;
    articles["a" + std::to_string(i)] = v;
  }
  const auto lookup = [&](const std::string& id) -> const ConceptVector& { return articles.at(id); };
  const std::vector<FeedbackKind> kinds{ExplicitRating{1}, ExplicitRating{-1}, ImplicitSignal{"opened"},
                                        ImplicitSignal{"readLong"}, ImplicitSignal{"skipped"}};
  std::size_t positives = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Profile p;
    p.user_id = "u";
    p.seeds = {"t" + std::to_string(rng.between(0, 11))};
    p.vector = seed_vector(p.seeds);
    for (int e = rng.between(1, 8); e > 0; --e) {
      const std::string article = "a" + std::to_string(rng.between(0, 29));
      const auto kind = rng.pick(kinds);
      FeedbackEvent event{"u", article, kind, "2011-01-12T08:00:00Z", signal_strength(kind, FeedbackConfig{}),
                          0.01 + 0.98 * rng.unit()};
      const double before = oracle::cosine(p.vector, articles.at(article));
      apply_feedback(p, articles.at(article), event);
      if (event.strength > 0) {
        ++positives;
        c.expect(oracle::cosine(p.vector, articles.at(article)) >= before - 1e-12,
                 "cosine decreased in trial " + std::to_string(trial));
      }
      c.expect(std::abs(l2(p.vector) - 1.0) <= 1e-9, "norm " + fmt("%.17g", l2(p.vector)));
    }
    c.expect(replay(p, lookup) == p.vector, "replay differs in trial " + std::to_string(trial));
    const auto reloaded = profile_from_json(json::parse(to_json(p).dump()));
    c.expect(replay(reloaded, lookup) == p.vector, "replay after JSON round trip differs");
  }
  return c.done("1000 trials, " + std::to_string(positives) + " positive updates, norms within 1e-9, replay bit-exact");
}

Outcome domain_swap() {
  Check c;
  testing_store::TempDir dir;
  Store::initialize(dir.path(), sample_options());
  Store store(dir.path(), testing_store::no_env());
  for (const auto& d : sample_articles()) store.ingest(d);

  const auto layer_bytes = [&](const char* name) { return storefs::read_file(dir / ("ontology/" + std::string(name) + ".json")); };
  std::map<std::string, std::string> before;
  for (const char* l : {"upper", "domain", "lexical", "corpus"}) before[l] = layer_bytes(l);

  const auto identity = store.swap_domain(store.snapshot()->kb.layer_content(Layer::Domain));
  c.expect(identity.empty(), "identity swap reported references");
  for (const char* l : {"upper", "domain", "lexical", "corpus"})
    c.expect(layer_bytes(l) == before[l], std::string("identity swap changed ") + l + ".json");

  // Remove one concept and one individual; the oracle is a set difference.
  const std::set<std::string> removed{"domain:Layoff", "domain:bdb"};
  auto domain = store.snapshot()->kb.layer_content(Layer::Domain);
  std::erase_if(domain.concepts, [&](const Concept& x) { return removed.contains(x.id); });
  std::erase_if(domain.individuals, [&](const Individual& x) { return removed.contains(x.id); });
  std::erase_if(domain.assertions, [&](const Assertion& x) { return removed.contains(x.subject); });

  std::vector<std::string> want_annotations, want_lexical, want_assertions;
  for (const auto& r : external_refs(*store.snapshot()))
    if (removed.contains(r.target))
      (r.kind == ExternalRef::Kind::Annotation ? want_annotations : want_lexical).push_back(r.ref);
  for (const auto& a : store.snapshot()->kb.assertions())
    if (!a.subject.starts_with("domain:") && a.object_ref() && removed.contains(a.object_ref()->id))
      want_assertions.push_back(a.subject + " " + a.property + " " + a.object_ref()->id);
  std::sort(want_annotations.begin(), want_annotations.end());
  want_annotations.erase(std::unique(want_annotations.begin(), want_annotations.end()), want_annotations.end());
  std::sort(want_lexical.begin(), want_lexical.end());

  auto report = store.swap_domain(domain);
  std::vector<std::string> got_annotations = report.annotations, got_lexical = report.lexical_entries, got_assertions;
  for (const auto& a : report.assertions) got_assertions.push_back(a.subject + " " + a.property + " " + a.object_ref()->id);
  std::sort(got_annotations.begin(), got_annotations.end());
  std::sort(got_lexical.begin(), got_lexical.end());
  c.expect(got_annotations == want_annotations, "flagged annotations differ");
  c.expect(got_lexical == want_lexical, "flagged lexical entries differ");
  c.expect(got_assertions == want_assertions, "flagged assertions differ");
  c.expect(!want_annotations.empty() && !want_lexical.empty() && !want_assertions.empty(),
           "removal touched no references");
  for (const char* l : {"upper", "lexical", "corpus"})
    c.expect(layer_bytes(l) == before[l], std::string("targeted swap changed ") + l + ".json");
  c.expect(store.validate().empty(), "store invalid after swap");
  return c.done("identity swap empty; removal flagged " + std::to_string(got_annotations.size()) + " annotations, " +
                std::to_string(got_lexical.size()) + " lexical entries, " + std::to_string(got_assertions.size()) +
                " assertion(s)");
}

// Ingests the synthetic articles into a fresh store, builds 10 profiles with
// some feedback, and returns each user's review JSON for the date.
std::map<std::string, std::string> e2e_reviews(const std::vector<Document>& docs, const std::string& date,
                                               std::map<std::string, std::string>* again) {
  testing_store::TempDir dir;
  Store::initialize(dir.path(), sample_options());
  Store store(dir.path(), testing_store::no_env());
  for (const auto& d : docs) store.ingest(d);

  oracle::Rng rng(7);
  const std::vector<std::string> concepts{"domain:CompanyTakeover", "domain:Layoff", "domain:Investment",
                                          "domain:Bankruptcy",      "domain:Company", "domain:Bank",
                                          "domain:PublicTender",    "domain:City",    "domain:Energy",
                                          "domain:Agrifood"};
  std::vector<std::string> rated;
  for (const auto& d : docs)
    if (!store.snapshot()->index.vector(d.id).empty()) rated.push_back(d.id);
  std::map<std::string, std::string> out;
  for (int u = 0; u < 10; ++u) {
    const std::string user = "user" + std::to_string(u);
    store.create_profile(user, {concepts[u], rng.pick(concepts)});
    for (int e = 0; e < 3; ++e)
      store.feedback(user, rng.pick(rated), e == 1 ? FeedbackKind{ImplicitSignal{"readLong"}} : ExplicitRating{1},
                     "2011-01-20T09:0" + std::to_string(e) + ":00Z");
    out[user] = store.review_json(user, date).dump();
  }
  if (again) {
    Store reopened(dir.path(), testing_store::no_env());
    for (const auto& [user, bytes] : out) (*again)[user] = reopened.review_json(user, date).dump();
  }
  return out;
}

Outcome end_to_end() {
  Check c;
  oracle::Rng rng(2015);
  const std::string date = "2011-02-01";
  const auto docs = news::synthetic(rng, 100, {date, "2011-02-02", "2011-02-03"});
  const auto t0 = Clock::now();
  std::map<std::string, std::string> reopened;
  const auto first = e2e_reviews(docs, date, &reopened);
  const double elapsed = seconds_since(t0);
  const auto second = e2e_reviews(docs, date, nullptr);
  c.expect(first == second, "reviews differ between two runs");
  c.expect(first == reopened, "reviews differ after reopening the store");
  std::size_t items = 0;
  for (const auto& [user, bytes] : first) items += json::parse(bytes).at("items").size();
  c.expect(items > 0, "all reviews empty");
  c.expect(elapsed < 30.0, "pipeline took " + fmt("%.2f s", elapsed));
  return c.done("100 articles, 10 profiles, " + std::to_string(items) + " review items byte-identical across runs, " +
                fmt("%.2f s", elapsed));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"extraction-vs-brute-force", extraction},
      {"closure-vs-bfs", closure},
      {"tfidf-cosine-values", vector_math},
      {"ranking-vs-full-scan", ranking},
      {"synonymy-polysemy", synonymy_polysemy},
      {"feedback-loop", feedback_loop},
      {"domain-swap", domain_swap},
      {"end-to-end-determinism", end_to_end},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
