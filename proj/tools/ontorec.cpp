// ontorec command line: store administration, dry runs and the HTTP service.

#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "ontorec/ontorec.hpp"

using namespace ontorec;

namespace {

// An article file holds one article object or an array of them.
std::vector<Document> read_articles(const std::string& path) {
  const json j = storefs::read_json(path);
  std::vector<Document> out;
  if (j.is_array())
    for (const auto& item : j) out.push_back(document_from_json(item));
  else
    out.push_back(document_from_json(j));
  return out;
}

FeedbackKind parse_signal(const std::string& signal) {
  if (signal == "+1" || signal == "1") return ExplicitRating{1};
  if (signal == "-1") return ExplicitRating{-1};
  return ImplicitSignal{signal};
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

HttpService* running = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontology-based news recommender"};
  app.require_subcommand(1);
  std::string store_dir = ".";
  if (const char* env = std::getenv("ONTOREC_STORE")) store_dir = env;
  app.add_option("--store", store_dir, "Store directory (default $ONTOREC_STORE or .)");

  auto* init = app.add_subcommand("init", "Create a store from an ontology directory and a lexicon");
  std::string ontology_dir, lexicon_file, rules_file, config_file;
  init->add_option("--ontology", ontology_dir, "Directory with upper/domain/lexical/corpus.json")->required();
  init->add_option("--lexicon", lexicon_file, "Lexicon JSON")->required();
  init->add_option("--rules", rules_file, "Pattern rules JSON (default: French dates)");
  init->add_option("--config", config_file, "Config JSON (default: built-in values)");

  std::string file, user, article, signal, date, concept_id;
  auto* ingest = app.add_subcommand("ingest", "Ingest the article(s) in a JSON file");
  ingest->add_option("file", file)->required();

  auto* annotate_cmd = app.add_subcommand("annotate", "Print the annotations of article(s) without storing");
  annotate_cmd->add_option("file", file)->required();

  auto* recommend = app.add_subcommand("recommend", "Print a user's review for a date");
  recommend->add_option("user", user)->required();
  recommend->add_option("date", date, "YYYY-MM-DD")->required();

  auto* feedback = app.add_subcommand("feedback", "Record feedback: +1, -1 or an implicit signal name");
  feedback->add_option("user", user)->required();
  feedback->add_option("article", article)->required();
  feedback->add_option("signal", signal)->required();

  auto* profile = app.add_subcommand("profile", "Create a user profile from seed concepts");
  std::vector<std::string> seeds;
  profile->add_option("user", user)->required();
  profile->add_option("seeds", seeds)->required();

  auto* alerts = app.add_subcommand("alerts", "Print a user's alerts");
  alerts->add_option("user", user)->required();

  auto* digest = app.add_subcommand("digest", "Print the knowledge digest of a concept");
  digest->add_option("concept", concept_id)->required();

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  std::string bind;
  serve->add_option("--bind", bind, "host:port (overrides config)");

  auto* eval = app.add_subcommand("eval", "Compare concept and keyword retrieval on a labeled spec");
  eval->add_option("spec", file)->required();

  auto* ontology = app.add_subcommand("ontology", "Ontology maintenance");
  ontology->require_subcommand(1);
  auto* validate = ontology->add_subcommand("validate", "Check the ontology and store integrity");
  auto* swap = ontology->add_subcommand("swap", "Replace the domain layer");
  swap->add_option("file", file)->required();

  auto* verify = app.add_subcommand("verify", "Rebuild from the journal and compare with stored files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (init->parsed()) {
      InitOptions options;
      options.kb = load_ontology(ontology_dir);
      options.lexicon = lexicon_from_json(storefs::read_json(lexicon_file));
      if (!rules_file.empty()) options.rules = rules_from_json(storefs::read_json(rules_file));
      if (!config_file.empty()) options.config = config_from_json(storefs::read_json(config_file));
      Store::initialize(store_dir, options);
      std::cout << "initialized " << store_dir << "\n";
      return 0;
    }

    Store store(store_dir);
    if (ingest->parsed()) {
      for (const auto& d : read_articles(file)) print(to_json(store.ingest(d)));
    } else if (annotate_cmd->parsed()) {
      for (const auto& d : read_articles(file)) {
        json list = json::array();
        for (const auto& a : store.preview(d)) list.push_back(to_json(a));
        print({{"articleId", d.id}, {"annotations", list}});
      }
    } else if (recommend->parsed()) {
      print(store.review_json(user, date));
    } else if (feedback->parsed()) {
      print(to_json(store.feedback(user, article, parse_signal(signal))));
    } else if (profile->parsed()) {
      print(to_json(store.create_profile(user, {seeds.begin(), seeds.end()})));
    } else if (alerts->parsed()) {
      json out = json::array();
      for (const auto& a : store.alerts(user)) out.push_back(to_json(a));
      print(out);
    } else if (digest->parsed()) {
      print(to_json(store.digest(concept_id)));
    } else if (serve->parsed()) {
      Config config = store.snapshot()->config;
      if (!bind.empty()) config.bind = bind;
      HttpService service(store);
      const int port = service.bind(config.host(), config.port());
      running = &service;
      std::signal(SIGINT, [](int) { running->stop(); });
      std::signal(SIGTERM, [](int) { running->stop(); });
      std::cerr << "listening on " << config.host() << ":" << port << "\n";
      service.listen();
    } else if (eval->parsed()) {
      print(to_json(eval_baseline(*store.snapshot(), eval_spec_from_json(storefs::read_json(file)))));
    } else if (validate->parsed()) {
      const auto problems = store.validate();
      for (const auto& p : problems) std::cout << p << "\n";
      if (!problems.empty()) return 1;
      std::cout << "ok\n";
    } else if (swap->parsed()) {
      print(to_json(store.swap_domain(layer_from_json(storefs::read_json(file)))));
    } else if (verify->parsed()) {
      const auto mismatches = store.verify_replay();
      for (const auto& m : mismatches) std::cout << "differs: " << m << "\n";
      if (!mismatches.empty()) return 1;
      std::cout << "replay matches\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
