#pragma once
// On-disk store and the write paths that keep it consistent.
//
// Layout under the root directory:
//   config.json            Config
//   ontology/<layer>.json  the four knowledge-base layers
//   lexicon.json           gazetteer entries, including populated ones
//   rules.json             pattern rules
//   articles/<id>.json     ingested documents
//   annotations/<id>.jsonl one annotation per line
//   index.json             concept index snapshot
//   profiles/<user>.json   profiles with their feedback history
//   alerts.log             one alert per line
//   dangling.json          report of the last domain swap
//   journal.jsonl          ingests and swaps, in order (drives replay)
//   base/                  ontology layers and lexicon as initialized
//
// Every write stages its files under .txn/, drops a COMMIT marker, then
// renames them into place. Opening a store rolls a committed transaction
// forward and discards an uncommitted one, so each write is all-or-nothing.
// File names are the ids, percent-encoded.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ontorec/annotation.hpp"
#include "ontorec/config.hpp"
#include "ontorec/error.hpp"
#include "ontorec/extract.hpp"
#include "ontorec/index.hpp"
#include "ontorec/kbase.hpp"
#include "ontorec/kbase_json.hpp"
#include "ontorec/lexicon.hpp"
#include "ontorec/pattern.hpp"
#include "ontorec/profile.hpp"
#include "ontorec/recommend.hpp"
#include "ontorec/unicode.hpp"

namespace ontorec {

namespace fs = std::filesystem;

namespace storefs {

inline std::string encode_name(std::string_view id) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (std::size_t i = 0; i < id.size(); ++i) {
    const auto c = static_cast<unsigned char>(id[i]);
    const bool plain = std::isalnum(c) || c == '_' || c == '-' || (c == '.' && i > 0);
    if (plain) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

inline std::string decode_name(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '%' && i + 2 < name.size()) {
      out.push_back(static_cast<char>(std::stoi(std::string(name.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(name[i]);
    }
  }
  return out;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
}

inline json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, path.string() + ": " + e.what());
  }
}

inline std::vector<json> read_json_lines(const fs::path& path) {
  std::vector<json> out;
  if (!fs::exists(path)) return out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw Error(Errc::SchemaError, path.string() + ": " + e.what());
    }
  }
  return out;
}

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace storefs

// ---- transactions --------------------------------------------------------------

using FileSet = std::map<std::string, std::string>;  // relative path -> content
// Called at "staged", "committed" and after each "renamed"; throwing simulates
// a crash (the store refuses further writes until reopened).
using FaultHook = std::function<void(std::string_view stage)>;

namespace txn {

inline fs::path dir(const fs::path& root) { return root / ".txn"; }

inline void roll_forward(const fs::path& root) {
  const json manifest = storefs::read_json(dir(root) / "MANIFEST");
  for (const auto& entry : manifest) {
    const fs::path staged = dir(root) / entry.at(0).get<std::string>();
    const fs::path target = root / entry.at(1).get<std::string>();
    if (!fs::exists(staged)) continue;  // already moved before the interruption
    fs::create_directories(target.parent_path());
    fs::rename(staged, target);
  }
  fs::remove_all(dir(root));
}

// Finish or discard an interrupted commit.
inline void recover(const fs::path& root) {
  if (!fs::exists(dir(root))) return;
  if (fs::exists(dir(root) / "COMMIT"))
    roll_forward(root);
  else
    fs::remove_all(dir(root));
}

inline void commit(const fs::path& root, const FileSet& files, const FaultHook& hook) {
  recover(root);
  fs::create_directories(dir(root));
  json manifest = json::array();
  std::size_t n = 0;
  for (const auto& [rel, content] : files) {
    const std::string name = std::to_string(n++);
    storefs::write_file(dir(root) / name, content);
    manifest.push_back({name, rel});
  }
  storefs::write_file(dir(root) / "MANIFEST", manifest.dump());
  if (hook) hook("staged");
  storefs::write_file(dir(root) / "COMMIT.tmp", "");
  fs::rename(dir(root) / "COMMIT.tmp", dir(root) / "COMMIT");
  if (hook) hook("committed");
  for (const auto& entry : manifest) {
    const fs::path target = root / entry.at(1).get<std::string>();
    fs::create_directories(target.parent_path());
    fs::rename(dir(root) / entry.at(0).get<std::string>(), target);
    if (hook) hook("renamed");
  }
  fs::remove_all(dir(root));
}

}  // namespace txn

// ---- state ---------------------------------------------------------------------

struct IngestReport {
  std::string article_id;
  std::size_t annotations = 0;
  std::vector<std::string> new_individuals;
  std::size_t index_size = 0;
};

inline json to_json(const IngestReport& r) {
  return {{"articleId", r.article_id},
          {"annotations", r.annotations},
          {"newIndividuals", r.new_individuals},
          {"N", r.index_size}};
}

// Everything a reader needs, immutable once published.
struct StoreState {
  Config config;
  KnowledgeBase kb;
  std::vector<LexicalEntry> lexicon;
  std::vector<PatternRule> rules;
  std::shared_ptr<const Gazetteer> gazetteer;
  std::map<std::string, Document> articles;
  AnnotationStore annotations;
  CorpusIndex index;
  std::map<std::string, Profile> profiles;
  std::vector<Alert> alerts;
  std::vector<json> journal;
  DanglingReport dangling;

  void rebuild_gazetteer() { gazetteer = std::make_shared<const Gazetteer>(lexicon, kb); }

  const Profile& profile(const std::string& user) const {
    auto it = profiles.find(user);
    if (it == profiles.end()) throw Error(Errc::UnknownId, "user " + user);
    return it->second;
  }
  const Document& article(const std::string& id) const {
    auto it = articles.find(id);
    if (it == articles.end()) throw Error(Errc::UnknownId, "article " + id);
    return it->second;
  }
};

namespace render {

inline std::string pretty(const json& j) { return j.dump(2) + "\n"; }

inline std::string lines(const std::vector<json>& items) {
  std::string out;
  for (const auto& j : items) out += j.dump() + "\n";
  return out;
}

inline std::string layer_path(Layer l) { return "ontology/" + std::string(layer_name(l)) + ".json"; }
inline std::string article_path(const std::string& id) { return "articles/" + storefs::encode_name(id) + ".json"; }
inline std::string annotations_path(const std::string& id) {
  return "annotations/" + storefs::encode_name(id) + ".jsonl";
}
inline std::string profile_path(const std::string& user) { return "profiles/" + storefs::encode_name(user) + ".json"; }

inline void ontology(const StoreState& s, FileSet& out) {
  for (Layer l : kLayers) out[layer_path(l)] = pretty(to_json(s.kb.layer_content(l)));
  out["lexicon.json"] = pretty(lexicon_to_json(s.lexicon));
}

inline std::string annotations(const std::vector<Annotation>& list) {
  std::vector<json> items;
  for (const auto& a : list) items.push_back(to_json(a));
  return lines(items);
}

inline std::string alerts(const std::vector<Alert>& list) {
  std::vector<json> items;
  for (const auto& a : list) items.push_back(to_json(a));
  return lines(items);
}

inline std::string index(const CorpusIndex& index) { return index.to_json().dump() + "\n"; }

}  // namespace render

// External references the domain swap must check: lexicon targets and the
// concept / individual of every stored annotation.
inline std::vector<ExternalRef> external_refs(const StoreState& s) {
  std::vector<ExternalRef> refs;
  for (std::size_t i = 0; i < s.lexicon.size(); ++i)
    refs.push_back({ExternalRef::Kind::LexicalEntry, lexical_entry_id(i), s.lexicon[i].target});
  for (const auto& [doc, list] : s.annotations)
    for (std::size_t n = 0; n < list.size(); ++n) {
      refs.push_back({ExternalRef::Kind::Annotation, annotation_id(doc, n), list[n].concept_id});
      if (list[n].individual) refs.push_back({ExternalRef::Kind::Annotation, annotation_id(doc, n), *list[n].individual});
    }
  return refs;
}

// annotate -> populate -> raw_counts -> tfidf -> index, applied to `s`.
inline IngestReport run_ingest(StoreState& s, const Document& doc, const ExpansionConfig& expansion) {
  if (s.articles.contains(doc.id)) throw Error(Errc::DuplicateArticle, doc.id);
  auto annotations = annotate(doc, *s.gazetteer, s.rules);
  const std::u32string text = unicode::decode(doc.text());
  auto population = populate(s.kb, s.lexicon, s.rules, text, annotations);
  if (!population.new_entries.empty()) s.rebuild_gazetteer();
  s.index.index_counts(doc.id, raw_counts(annotations, s.kb, expansion));
  s.articles.emplace(doc.id, doc);
  IngestReport report{doc.id, annotations.size(), population.new_individuals, s.index.size()};
  s.annotations[doc.id] = std::move(annotations);
  return report;
}

inline ExpansionConfig expansion_from_journal(const json& event, const Config& fallback) {
  ExpansionConfig e = fallback.expansion();
  e.gamma = event.value("gamma", e.gamma);
  e.expand = event.value("expandHierarchy", e.expand);
  e.temporal_concept = event.value("temporalConcept", e.temporal_concept);
  return e;
}

// Reads <dir>/{upper,domain,lexical,corpus}.json.
inline KnowledgeBase load_ontology(const fs::path& dir) {
  KnowledgeBase kb;
  for (Layer l : kLayers) {
    auto content = layer_from_json(storefs::read_json(dir / (std::string(layer_name(l)) + ".json")));
    if (content.layer != l) throw Error(Errc::SchemaError, "layer file " + std::string(layer_name(l)) + " mislabeled");
    kb.load_unchecked(content);
  }
  return kb;
}

struct InitOptions {
  KnowledgeBase kb;
  std::vector<LexicalEntry> lexicon;
  std::vector<PatternRule> rules = builtin_rules();
  Config config;
};

class Store {
 public:
  // Create a new store; fails if root already holds one.
  static void initialize(const fs::path& root, const InitOptions& options) {
    if (fs::exists(root / "config.json")) throw Error(Errc::DuplicateId, "a store already exists at " + root.string());
    options.config.validate();
    if (auto v = options.kb.validate(); !v.empty())
      throw Error(Errc::SchemaError, "initial ontology is invalid: " + v.front().rule + " " + v.front().id);
    check_rules(options.rules, options.kb);
    StoreState s;
    s.config = options.config;
    s.kb = options.kb;
    s.lexicon = options.lexicon;
    s.rules = options.rules;
    FileSet files;
    render::ontology(s, files);
    for (Layer l : kLayers) files["base/" + std::string(layer_name(l)) + ".json"] = files[render::layer_path(l)];
    files["base/lexicon.json"] = files["lexicon.json"];
    files["rules.json"] = render::pretty(rules_to_json(s.rules));
    files["index.json"] = render::index(s.index);
    files["alerts.log"] = "";
    files["journal.jsonl"] = "";
    files["dangling.json"] = render::pretty(to_json(s.dangling));
    files["config.json"] = render::pretty(to_json(s.config));
    fs::create_directories(root);
    txn::commit(root, files, {});
    for (auto sub : {"articles", "annotations", "profiles"}) fs::create_directories(root / sub);
  }

  explicit Store(fs::path root, EnvLookup env = process_env) : root_(std::move(root)), env_(std::move(env)) {
    if (!fs::exists(root_ / "config.json")) throw Error(Errc::IoError, "no store at " + root_.string());
    txn::recover(root_);
    state_ = std::make_shared<const StoreState>(load(env_));
  }

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const fs::path& root() const { return root_; }

  std::shared_ptr<const StoreState> snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return state_;
  }

  void set_fault_hook(FaultHook hook) {
    std::lock_guard lock(writer_);
    hook_ = std::move(hook);
  }

  // ---- writes (serialized) ----

  IngestReport ingest(const Document& doc) {
    std::lock_guard lock(writer_);
    auto current = snapshot();
    if (doc.id.empty() || !is_iso_date(doc.published_date))
      throw Error(Errc::SchemaError, "article needs an id and a YYYY-MM-DD publishedDate");
    if (current->articles.contains(doc.id)) throw Error(Errc::DuplicateArticle, doc.id);

    auto next = std::make_shared<StoreState>(*current);
    const ExpansionConfig expansion = next->config.expansion();
    IngestReport report = run_ingest(*next, doc, expansion);

    const std::size_t alerts_before = next->alerts.size();
    std::set<std::pair<std::string, std::string>> sent;
    for (const auto& a : next->alerts) sent.insert({a.user_id, a.individual_id});
    for (const auto& [user, profile] : next->profiles)
      for (auto& alert : detect_alerts(next->kb, report.new_individuals, profile, next->config.tau, doc.id,
                                       doc.published_date))
        if (sent.insert({alert.user_id, alert.individual_id}).second) next->alerts.push_back(std::move(alert));

    next->journal.push_back({{"op", "ingest"},
                             {"articleId", doc.id},
                             {"gamma", expansion.gamma},
                             {"expandHierarchy", expansion.expand},
                             {"temporalConcept", expansion.temporal_concept}});

    FileSet files;
    files[render::article_path(doc.id)] = render::pretty(to_json(doc));
    files[render::annotations_path(doc.id)] = render::annotations(next->annotations.at(doc.id));
    files["index.json"] = render::index(next->index);
    if (!report.new_individuals.empty()) render::ontology(*next, files);
    if (next->alerts.size() != alerts_before) files["alerts.log"] = render::alerts(next->alerts);
    files["journal.jsonl"] = render::lines(next->journal);
    publish(std::move(next), files);
    return report;
  }

  Profile create_profile(const std::string& user, const std::set<std::string>& seeds) {
    std::lock_guard lock(writer_);
    auto current = snapshot();
    if (user.empty()) throw Error(Errc::SchemaError, "user id is empty");
    if (current->profiles.contains(user)) throw Error(Errc::DuplicateId, "user " + user);
    auto next = std::make_shared<StoreState>(*current);
    Profile p = init_profile(user, seeds, next->kb);
    next->profiles.emplace(user, p);
    publish(std::move(next), {{render::profile_path(user), render::pretty(to_json(p))}});
    return p;
  }

  Profile feedback(const std::string& user, const std::string& article, const FeedbackKind& kind,
                   std::string timestamp = {}) {
    std::lock_guard lock(writer_);
    auto current = snapshot();
    (void)current->profile(user);
    const ConceptVector& vector = current->index.vector(article);
    FeedbackEvent event{user, article, kind, timestamp.empty() ? storefs::utc_now() : std::move(timestamp), 0.0,
                        current->config.alpha};
    event.strength = signal_strength(kind, current->config.feedback());
    auto next = std::make_shared<StoreState>(*current);
    Profile& p = next->profiles.at(user);
    apply_feedback(p, vector, std::move(event));
    Profile out = p;
    publish(std::move(next), {{render::profile_path(user), render::pretty(to_json(out))}});
    return out;
  }

  DanglingReport swap_domain(const LayerContent& domain) {
    std::lock_guard lock(writer_);
    auto current = snapshot();
    auto next = std::make_shared<StoreState>(*current);
    next->dangling = next->kb.swap_domain(domain, external_refs(*next));
    next->rebuild_gazetteer();
    next->journal.push_back({{"op", "swap"}, {"domain", to_json(domain)}});
    FileSet files;
    files[render::layer_path(Layer::Domain)] = render::pretty(to_json(next->kb.layer_content(Layer::Domain)));
    files["dangling.json"] = render::pretty(to_json(next->dangling));
    files["journal.jsonl"] = render::lines(next->journal);
    DanglingReport report = next->dangling;
    publish(std::move(next), files);
    return report;
  }

  // ---- reads (lock-free against the published snapshot) ----

  std::vector<Annotation> preview(const Document& doc) const {
    auto s = snapshot();
    auto out = annotate(doc, *s->gazetteer, s->rules);
    return out;
  }

  // Articles published on `date` scored against the user's profile.
  Review review(const std::string& user, const std::string& date) const {
    auto s = snapshot();
    if (!is_iso_date(date)) throw Error(Errc::SchemaError, "date '" + date + "' is not YYYY-MM-DD");
    std::set<std::string> daily;
    for (const auto& [id, doc] : s->articles)
      if (doc.published_date == date) daily.insert(id);
    return generate_review(s->profile(user), daily, s->index, s->config.k, s->config.theta, date);
  }

  json review_json(const std::string& user, const std::string& date) const {
    auto s = snapshot();
    return to_json(review(user, date), [&](const std::string& id) { return s->article(id).title; });
  }

  std::vector<Alert> alerts(const std::string& user) const {
    auto s = snapshot();
    (void)s->profile(user);
    std::vector<Alert> out;
    for (const auto& a : s->alerts)
      if (a.user_id == user) out.push_back(a);
    return out;
  }

  Digest digest(const std::string& concept_id) const {
    auto s = snapshot();
    return knowledge_digest(s->kb, s->annotations, concept_id);
  }

  // Integrity problems, empty when the store is consistent.
  std::vector<std::string> validate() const {
    auto s = snapshot();
    std::vector<std::string> problems;
    for (const auto& v : s->kb.validate()) problems.push_back("ontology " + v.rule + " " + v.id + ": " + v.message);
    std::set<std::string> journaled;
    for (const auto& e : s->journal)
      if (e.value("op", "") == "ingest") journaled.insert(e.value("articleId", ""));
    for (const auto& [id, doc] : s->articles) {
      if (!s->annotations.contains(id)) problems.push_back("article " + id + " has no annotations file");
      if (!s->index.contains(id)) problems.push_back("article " + id + " is not indexed");
      if (!journaled.contains(id)) problems.push_back("article " + id + " missing from the journal");
    }
    for (const auto& [id, list] : s->annotations)
      if (!s->articles.contains(id)) problems.push_back("annotations for unknown article " + id);
    for (const auto& [id, v] : s->index.vectors())
      if (!s->articles.contains(id)) problems.push_back("index holds unknown article " + id);
    for (const auto& id : journaled)
      if (!s->articles.contains(id)) problems.push_back("journal names unknown article " + id);
    if (!s->index.consistent()) problems.push_back("index postings inconsistent with vectors");
    for (const auto& [user, p] : s->profiles)
      for (const auto& e : p.history)
        if (!s->index.contains(e.article_id)) problems.push_back("profile " + user + " rated unknown " + e.article_id);
    return problems;
  }

  // Rebuild index, ontology, lexicon, annotations and profiles from base/,
  // the journal, articles/ and the feedback histories; list every file whose
  // rebuilt bytes differ from the stored ones.
  std::vector<std::string> verify_replay() const {
    auto s = snapshot();
    StoreState r;
    r.config = s->config;
    r.kb = load_ontology(root_ / "base");
    r.lexicon = lexicon_from_json(storefs::read_json(root_ / "base" / "lexicon.json"));
    r.rules = s->rules;
    r.rebuild_gazetteer();
    for (const auto& event : s->journal) {
      const std::string op = event.value("op", "");
      if (op == "ingest") {
        run_ingest(r, s->article(event.at("articleId").get<std::string>()),
                   expansion_from_journal(event, s->config));
      } else if (op == "swap") {
        r.dangling = r.kb.swap_domain(layer_from_json(event.at("domain")), external_refs(r));
        r.rebuild_gazetteer();
      }
    }
    FileSet rebuilt;
    render::ontology(r, rebuilt);
    rebuilt["index.json"] = render::index(r.index);
    for (const auto& [id, list] : r.annotations) rebuilt[render::annotations_path(id)] = render::annotations(list);
    for (const auto& [user, stored] : s->profiles) {
      Profile p = stored;
      p.vector = replay(stored, [&](const std::string& id) -> const ConceptVector& { return r.index.vector(id); });
      rebuilt[render::profile_path(user)] = render::pretty(to_json(p));
    }
    std::vector<std::string> mismatches;
    for (const auto& [rel, content] : rebuilt) {
      const fs::path path = root_ / rel;
      if (!fs::exists(path) || storefs::read_file(path) != content) mismatches.push_back(rel);
    }
    return mismatches;
  }

 private:
  void publish(std::shared_ptr<StoreState> next, const FileSet& files) {
    if (crashed_) throw Error(Errc::IoError, "store hit an injected fault; reopen it");
    bool injected = false;
    FaultHook hook;
    if (hook_)
      hook = [&](std::string_view stage) {
        try {
          hook_(stage);
        } catch (...) {
          injected = true;
          throw;
        }
      };
    try {
      txn::commit(root_, files, hook);
    } catch (...) {
      if (injected) {
        // Behave like a process that died here: leave disk for the next open.
        crashed_ = true;
        throw;
      }
      txn::recover(root_);
      auto reloaded = std::make_shared<const StoreState>(load(env_));
      std::lock_guard lock(snapshot_mutex_);
      state_ = std::move(reloaded);
      throw;
    }
    std::lock_guard lock(snapshot_mutex_);
    state_ = std::move(next);
  }

  StoreState load(const EnvLookup& env) const {
    StoreState s;
    s.config = apply_env(config_from_json(storefs::read_json(root_ / "config.json")), env);
    s.kb = load_ontology(root_ / "ontology");
    s.dangling = dangling_from_json(storefs::read_json(root_ / "dangling.json"));
    s.kb.mark_dangling(s.dangling.assertions);
    s.lexicon = lexicon_from_json(storefs::read_json(root_ / "lexicon.json"));
    s.rules = rules_from_json(storefs::read_json(root_ / "rules.json"));
    check_rules(s.rules, s.kb);
    s.rebuild_gazetteer();
    for (const auto& entry : list_dir(root_ / "articles", ".json")) {
      Document doc = document_from_json(storefs::read_json(entry.second));
      if (doc.id != entry.first) throw Error(Errc::SchemaError, entry.second.string() + " holds article " + doc.id);
      s.articles.emplace(doc.id, std::move(doc));
    }
    for (const auto& entry : list_dir(root_ / "annotations", ".jsonl")) {
      auto& list = s.annotations[entry.first];
      for (const auto& j : storefs::read_json_lines(entry.second)) list.push_back(annotation_from_json(j));
    }
    s.index = CorpusIndex::from_json(storefs::read_json(root_ / "index.json"));
    for (const auto& entry : list_dir(root_ / "profiles", ".json")) {
      Profile p = profile_from_json(storefs::read_json(entry.second));
      if (p.user_id != entry.first) throw Error(Errc::SchemaError, entry.second.string() + " holds user " + p.user_id);
      s.profiles.emplace(p.user_id, std::move(p));
    }
    for (const auto& j : storefs::read_json_lines(root_ / "alerts.log")) s.alerts.push_back(alert_from_json(j));
    s.journal = storefs::read_json_lines(root_ / "journal.jsonl");
    return s;
  }

  // (decoded id, path) of every file with the suffix, sorted by id.
  static std::map<std::string, fs::path> list_dir(const fs::path& dir, const std::string& suffix) {
    std::map<std::string, fs::path> out;
    if (!fs::exists(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
      const std::string name = e.path().filename().string();
      if (!e.is_regular_file() || name.size() <= suffix.size() ||
          name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0)
        continue;
      out.emplace(storefs::decode_name(name.substr(0, name.size() - suffix.size())), e.path());
    }
    return out;
  }

  fs::path root_;
  EnvLookup env_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const StoreState> state_;
  std::mutex writer_;
  FaultHook hook_;
  bool crashed_ = false;
};

}  // namespace ontorec
