#pragma once
// Gazetteer matching of lexical-layer entries against a token stream.
//
// Semantics are leftmost-longest over token texts: scanning left to right, at
// each position the longest entry surface that matches wins (lexicon order
// breaks ties between equally long surfaces), the scan resumes after it, and
// positions where nothing matches are skipped by one token. Matching walks a
// token-level trie keyed on case-folded token text; case-sensitive entries are
// re-checked against the original text at the terminal node.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontorec/annotation.hpp"
#include "ontorec/error.hpp"
#include "ontorec/kbase.hpp"
#include "ontorec/tokenize.hpp"
#include "ontorec/unicode.hpp"

namespace ontorec {

struct LexicalEntry {
  std::string surface;
  std::string target;  // concept or individual id
  bool case_sensitive = false;

  bool operator==(const LexicalEntry&) const = default;
};

inline std::string lexical_entry_id(std::size_t index) { return "lexicon#" + std::to_string(index); }

inline json to_json(const LexicalEntry& e) {
  return {{"surface", e.surface}, {"target", e.target}, {"caseSensitive", e.case_sensitive}};
}

inline json lexicon_to_json(std::span<const LexicalEntry> entries) {
  json out = json::array();
  for (const auto& e : entries) out.push_back(to_json(e));
  return out;
}

inline std::vector<LexicalEntry> lexicon_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::SchemaError, "lexicon must be a JSON list");
  std::vector<LexicalEntry> out;
  for (const auto& e : j) {
    try {
      LexicalEntry entry{e.at("surface").get<std::string>(), e.at("target").get<std::string>(),
                         e.value("caseSensitive", false)};
      if (tokenize(entry.surface).empty())
        throw Error(Errc::SchemaError, "lexicon surface '" + entry.surface + "' has no tokens");
      out.push_back(std::move(entry));
    } catch (const json::exception& ex) {
      throw Error(Errc::SchemaError, std::string("lexicon entry: ") + ex.what());
    }
  }
  return out;
}

class Gazetteer {
 public:
  Gazetteer() : trie_(1) {}

  // Entries whose target does not resolve in kb are left out (see skipped()).
  Gazetteer(std::span<const LexicalEntry> entries, const KnowledgeBase& kb) : trie_(1) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      Compiled c;
      if (kb.has_concept(e.target)) {
        c.concept_id = e.target;
      } else if (kb.has_individual(e.target)) {
        c.concept_id = kb.individual_at(e.target).primary_type();
        c.individual = e.target;
      } else {
        skipped_.push_back(i);
        continue;
      }
      for (auto& t : tokenize(e.surface)) c.tokens.push_back(std::move(t.text));
      if (c.tokens.empty()) {
        skipped_.push_back(i);
        continue;
      }
      c.case_sensitive = e.case_sensitive;

      std::size_t node = 0;
      for (const auto& t : c.tokens) {
        std::string key = unicode::fold(t);
        auto it = trie_[node].next.find(key);
        if (it == trie_[node].next.end()) {
          trie_.push_back({});
          it = trie_[node].next.emplace(std::move(key), trie_.size() - 1).first;
        }
        node = it->second;
      }
      trie_[node].terminal.push_back(compiled_.size());
      compiled_.push_back(std::move(c));
    }
  }

  const std::vector<std::size_t>& skipped() const { return skipped_; }

  std::vector<Annotation> match(std::span<const Token> tokens) const {
    std::vector<std::string> folded;
    folded.reserve(tokens.size());
    for (const auto& t : tokens) folded.push_back(unicode::fold(t.text));

    std::vector<Annotation> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
      std::optional<std::size_t> best;
      std::size_t best_len = 0;
      std::size_t node = 0;
      for (std::size_t j = i; j < tokens.size(); ++j) {
        auto it = trie_[node].next.find(folded[j]);
        if (it == trie_[node].next.end()) break;
        node = it->second;
        for (std::size_t ci : trie_[node].terminal) {
          if (accepts(compiled_[ci], tokens.subspan(i, j - i + 1))) {
            best = ci;
            best_len = j - i + 1;
            break;
          }
        }
      }
      if (!best) {
        ++i;
        continue;
      }
      const Compiled& c = compiled_[*best];
      Annotation a;
      a.start = tokens[i].start;
      a.end = tokens[i + best_len - 1].end;
      a.concept_id = c.concept_id;
      a.individual = c.individual;
      a.source = AnnotationSource::Gazetteer;
      a.priority = kGazetteerPriority;
      out.push_back(std::move(a));
      i += best_len;
    }
    return out;
  }

 private:
  struct Compiled {
    std::vector<std::string> tokens;
    std::string concept_id;
    std::optional<std::string> individual;
    bool case_sensitive = false;
  };
  struct Node {
    std::map<std::string, std::size_t> next;
    std::vector<std::size_t> terminal;  // indices into compiled_, lexicon order
  };

  static bool accepts(const Compiled& c, std::span<const Token> window) {
    if (!c.case_sensitive) return true;
    for (std::size_t k = 0; k < window.size(); ++k)
      if (window[k].text != c.tokens[k]) return false;
    return true;
  }

  std::vector<Node> trie_;
  std::vector<Compiled> compiled_;
  std::vector<std::size_t> skipped_;
};

inline std::vector<Annotation> gazetteer_match(std::span<const Token> tokens, const Gazetteer& gazetteer) {
  return gazetteer.match(tokens);
}

}  // namespace ontorec
