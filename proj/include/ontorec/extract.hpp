#pragma once
// Document annotation and ABox population.

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontorec/annotation.hpp"
#include "ontorec/kbase.hpp"
#include "ontorec/lexicon.hpp"
#include "ontorec/pattern.hpp"
#include "ontorec/tokenize.hpp"
#include "ontorec/unicode.hpp"

namespace ontorec {

inline std::vector<Annotation> annotate(const Document& doc, const Gazetteer& gazetteer,
                                        std::span<const PatternRule> rules) {
  const auto tokens = tokenize(doc.text());
  auto candidates = gazetteer.match(tokens);
  auto patterns = pattern_match(tokens, rules);
  candidates.insert(candidates.end(), std::make_move_iterator(patterns.begin()),
                    std::make_move_iterator(patterns.end()));
  auto out = resolve_overlaps(std::move(candidates));
  for (auto& a : out) a.doc_id = doc.id;
  return out;
}

struct PopulationResult {
  std::vector<std::string> new_individuals;
  std::vector<LexicalEntry> new_entries;
};

namespace detail {

inline std::string id_slug(std::string_view surface) {
  std::string out;
  for (char32_t c : unicode::decode(unicode::normalize_surface(surface))) {
    if (unicode::is_letter(c) || unicode::is_digit(c))
      unicode::append(out, c);
    else if (!out.empty() && out.back() != '_')
      out.push_back('_');
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "entity" : out;
}

}  // namespace detail

// For every pattern annotation whose rule creates individuals: link it to the
// existing individual of that concept with the same normalized label, or add a
// new individual (and a lexicon entry for its surface). Mentions are deduped on
// (concept, case-folded whitespace-collapsed surface). `text` is the document
// text the annotation offsets refer to. kb, lexicon and annotations change
// together or not at all.
inline PopulationResult populate(KnowledgeBase& kb, std::vector<LexicalEntry>& lexicon,
                                 std::span<const PatternRule> rules, std::u32string_view text,
                                 std::vector<Annotation>& annotations) {
  std::map<std::string, const PatternRule*> by_name;
  for (const auto& r : rules) by_name.emplace(r.name, &r);

  KnowledgeBase next_kb = kb;
  auto next_lexicon = lexicon;
  auto next_annotations = annotations;
  PopulationResult result;
  std::map<std::pair<std::string, std::string>, std::string> known;

  auto lookup = [&](const std::string& concept_id, const std::string& key) -> std::optional<std::string> {
    if (auto it = known.find({concept_id, key}); it != known.end()) return it->second;
    for (const auto& id : next_kb.instances_of(concept_id, true)) {
      if (unicode::normalize_surface(next_kb.individual_at(id).label) == key) {
        known.emplace(std::pair{concept_id, key}, id);
        return id;
      }
    }
    return std::nullopt;
  };

  for (auto& a : next_annotations) {
    if (a.source != AnnotationSource::Pattern || !a.rule_name) continue;
    auto rule = by_name.find(*a.rule_name);
    if (rule == by_name.end() || !rule->second->action.create_individual) continue;
    if (a.end > text.size()) throw Error(Errc::SchemaError, "annotation span outside document");

    const std::string surface = unicode::encode(text.substr(a.start, a.end - a.start));
    const std::string key = unicode::normalize_surface(surface);
    if (auto existing = lookup(a.concept_id, key)) {
      a.individual = *existing;
      continue;
    }

    const Layer layer = next_kb.concept_at(a.concept_id).layer();
    const std::string base = std::string(layer_name(layer)) + ":" + detail::id_slug(surface);
    std::string id = base;
    for (int n = 2; next_kb.has_individual(id) || next_kb.has_concept(id) || next_kb.has_property(id); ++n)
      id = base + "_" + std::to_string(n);

    std::string label;
    for (char32_t c : text.substr(a.start, a.end - a.start)) {
      if (unicode::is_space(c)) {
        if (!label.empty() && label.back() != ' ') label.push_back(' ');
      } else {
        unicode::append(label, c);
      }
    }
    next_kb.add_individual({id, label, {a.concept_id}});
    LexicalEntry entry{label, id, false};
    next_lexicon.push_back(entry);
    result.new_entries.push_back(std::move(entry));
    result.new_individuals.push_back(id);
    known.emplace(std::pair{a.concept_id, key}, id);
    a.individual = id;
  }

  kb = std::move(next_kb);
  lexicon = std::move(next_lexicon);
  annotations = std::move(next_annotations);
  return result;
}

}  // namespace ontorec
