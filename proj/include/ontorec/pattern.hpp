#pragma once
// Finite-state token patterns.
//
// A rule is a flat sequence of matchers, each consuming one token, except
// optional groups which match their inner sequence zero or one time. Matching
// tracks the set of reachable token positions (an NFA run, no backtracking
// across rules); at each start position a rule reports its longest match.

#include <array>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontorec/annotation.hpp"
#include "ontorec/date.hpp"
#include "ontorec/error.hpp"
#include "ontorec/kbase.hpp"
#include "ontorec/tokenize.hpp"
#include "ontorec/unicode.hpp"

namespace ontorec {

struct Matcher {
  enum class Type { Literal, Kind, Regex, Optional };

  Type type = Type::Literal;
  std::string text;             // Literal text or Regex source
  bool case_sensitive = false;  // Literal
  bool fold = false;            // Regex: match against case-folded token text
  TokenKind kind = TokenKind::Word;
  std::vector<Matcher> group;   // Optional
  std::shared_ptr<const std::regex> compiled;

  static Matcher literal(std::string text, bool case_sensitive = false) {
    Matcher m;
    m.type = Type::Literal;
    m.text = std::move(text);
    m.case_sensitive = case_sensitive;
    return m;
  }
  static Matcher of_kind(TokenKind kind) {
    Matcher m;
    m.type = Type::Kind;
    m.kind = kind;
    return m;
  }
  static Matcher regex(std::string source, bool fold = false) {
    Matcher m;
    m.type = Type::Regex;
    m.text = std::move(source);
    m.fold = fold;
    try {
      m.compiled = std::make_shared<const std::regex>(m.text, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw Error(Errc::SchemaError, "bad token regex '" + m.text + "': " + e.what());
    }
    return m;
  }
  static Matcher optional(std::vector<Matcher> group) {
    Matcher m;
    m.type = Type::Optional;
    m.group = std::move(group);
    return m;
  }

  // Single-token test; not meaningful for Optional.
  bool accepts(const Token& token, const std::string& folded) const {
    switch (type) {
      case Type::Literal: return case_sensitive ? token.text == text : folded == unicode::fold(text);
      case Type::Kind: return token.kind == kind;
      case Type::Regex: return std::regex_match(fold ? folded : token.text, *compiled);
      case Type::Optional: return false;
    }
    return false;
  }
};

enum class Normalizer { None, Date };

struct RuleAction {
  std::string concept_id;
  bool create_individual = false;
  Normalizer normalizer = Normalizer::None;
};

struct PatternRule {
  std::string name;
  int priority = 0;
  std::vector<Matcher> pattern;
  RuleAction action;
};

// ---- JSON ----------------------------------------------------------------

inline json to_json(const Matcher& m) {
  switch (m.type) {
    case Matcher::Type::Literal: return {{"literal", m.text}, {"caseSensitive", m.case_sensitive}};
    case Matcher::Type::Kind: return {{"kind", token_kind_name(m.kind)}};
    case Matcher::Type::Regex: return {{"regex", m.text}, {"fold", m.fold}};
    case Matcher::Type::Optional: {
      json group = json::array();
      for (const auto& g : m.group) group.push_back(to_json(g));
      return {{"optional", group}};
    }
  }
  return {};
}

inline Matcher matcher_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::SchemaError, "matcher must be an object");
  if (j.contains("literal"))
    return Matcher::literal(j.at("literal").get<std::string>(), j.value("caseSensitive", false));
  if (j.contains("kind")) {
    TokenKind k;
    if (!parse_token_kind(j.at("kind").get<std::string>(), k))
      throw Error(Errc::SchemaError, "unknown token kind in matcher");
    return Matcher::of_kind(k);
  }
  if (j.contains("regex")) return Matcher::regex(j.at("regex").get<std::string>(), j.value("fold", false));
  if (j.contains("optional")) {
    std::vector<Matcher> group;
    for (const auto& g : j.at("optional")) group.push_back(matcher_from_json(g));
    if (group.empty()) throw Error(Errc::SchemaError, "empty optional group");
    return Matcher::optional(std::move(group));
  }
  throw Error(Errc::SchemaError, "matcher needs one of literal/kind/regex/optional");
}

inline json to_json(const PatternRule& r) {
  json pattern = json::array();
  for (const auto& m : r.pattern) pattern.push_back(to_json(m));
  return {{"name", r.name},
          {"priority", r.priority},
          {"pattern", pattern},
          {"action",
           {{"concept", r.action.concept_id},
            {"createIndividual", r.action.create_individual},
            {"normalizer", r.action.normalizer == Normalizer::Date ? "date" : "none"}}}};
}

inline PatternRule rule_from_json(const json& j) {
  try {
    PatternRule r;
    r.name = j.at("name").get<std::string>();
    r.priority = j.value("priority", 0);
    for (const auto& m : j.at("pattern")) r.pattern.push_back(matcher_from_json(m));
    if (r.pattern.empty()) throw Error(Errc::SchemaError, "rule " + r.name + " has an empty pattern");
    const json& action = j.at("action");
    r.action.concept_id = action.at("concept").get<std::string>();
    r.action.create_individual = action.value("createIndividual", false);
    const std::string normalizer = action.value("normalizer", "none");
    if (normalizer == "date")
      r.action.normalizer = Normalizer::Date;
    else if (normalizer != "none")
      throw Error(Errc::SchemaError, "unknown normalizer '" + normalizer + "'");
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("rule: ") + e.what());
  }
}

inline std::vector<PatternRule> rules_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::SchemaError, "rules must be a JSON list");
  std::vector<PatternRule> out;
  for (const auto& r : j) out.push_back(rule_from_json(r));
  return out;
}

inline json rules_to_json(std::span<const PatternRule> rules) {
  json out = json::array();
  for (const auto& r : rules) out.push_back(to_json(r));
  return out;
}

inline void check_rules(std::span<const PatternRule> rules, const KnowledgeBase& kb) {
  for (const auto& r : rules)
    if (!kb.has_concept(r.action.concept_id))
      throw Error(Errc::UnknownConcept, "rule " + r.name + " annotates unknown " + r.action.concept_id);
}

// ---- built-in rules --------------------------------------------------------

inline constexpr const char* kTemporalConcept = "upper:Temporal";

// Alternations rather than bracket classes: regexes run over UTF-8 bytes.
inline const char* french_month_regex() {
  return "janvier|f(?:é|e)vrier|mars|avril|mai|juin|juillet|ao(?:û|u)t|septembre|octobre|novembre|d(?:é|e)cembre";
}

// "12 janvier 2011", "1er mars 2010", "janvier 2011".
inline PatternRule french_date_rule() {
  PatternRule r;
  r.name = "fr-date";
  r.priority = 10;
  r.pattern = {Matcher::optional({Matcher::regex("0?[1-9]|[12][0-9]|3[01]"),
                                  Matcher::optional({Matcher::literal("er")})}),
               Matcher::regex(french_month_regex(), true), Matcher::regex("[0-9]{4}")};
  r.action = {kTemporalConcept, false, Normalizer::Date};
  return r;
}

inline std::vector<PatternRule> builtin_rules() { return {french_date_rule()}; }

// ---- date normalization ---------------------------------------------------

inline int french_month(const std::string& folded) {
  static const std::array<std::array<const char*, 2>, 12> names{{{"janvier", "janvier"},
                                                                 {"février", "fevrier"},
                                                                 {"mars", "mars"},
                                                                 {"avril", "avril"},
                                                                 {"mai", "mai"},
                                                                 {"juin", "juin"},
                                                                 {"juillet", "juillet"},
                                                                 {"août", "aout"},
                                                                 {"septembre", "septembre"},
                                                                 {"octobre", "octobre"},
                                                                 {"novembre", "novembre"},
                                                                 {"décembre", "decembre"}}};
  for (std::size_t m = 0; m < names.size(); ++m)
    if (folded == names[m][0] || folded == names[m][1]) return static_cast<int>(m) + 1;
  return 0;
}

// ISO value of a matched date span: day, month or year precision. nullopt
// when the tokens do not form a valid calendar date.
inline std::optional<std::string> normalize_date(std::span<const Token> tokens) {
  int day = 0, month = 0, year = 0;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Word && month == 0) {
      month = french_month(unicode::fold(t.text));
    } else if (t.kind == TokenKind::Number) {
      if (t.text.size() == 4 && year == 0)
        year = std::stoi(t.text);
      else if (t.text.size() <= 2 && month == 0 && day == 0)
        day = std::stoi(t.text);
    }
  }
  if (year == 0) return std::nullopt;
  PartialDate d{year, month, day, DatePrecision::Year};
  if (month != 0) d.precision = DatePrecision::Month;
  if (month != 0 && day != 0) {
    if (!valid_calendar_date(year, month, day)) return std::nullopt;
    d.precision = DatePrecision::Day;
  }
  return d.iso();
}

// ---- matching ---------------------------------------------------------------

namespace detail {

inline std::set<std::size_t> advance(std::span<const Matcher> seq, std::span<const Token> tokens,
                                     std::span<const std::string> folded, std::set<std::size_t> cur) {
  for (const auto& m : seq) {
    if (m.type == Matcher::Type::Optional) {
      auto taken = advance(m.group, tokens, folded, cur);
      cur.insert(taken.begin(), taken.end());
    } else {
      std::set<std::size_t> next;
      for (std::size_t p : cur)
        if (p < tokens.size() && m.accepts(tokens[p], folded[p])) next.insert(p + 1);
      cur = std::move(next);
    }
    if (cur.empty()) break;
  }
  return cur;
}

}  // namespace detail

// End (exclusive token index) of the longest non-empty match of rule at start.
inline std::optional<std::size_t> longest_match(const PatternRule& rule, std::span<const Token> tokens,
                                                std::span<const std::string> folded, std::size_t start) {
  auto ends = detail::advance(rule.pattern, tokens, folded, {start});
  if (ends.empty() || *ends.rbegin() == start) return std::nullopt;
  return *ends.rbegin();
}

inline std::vector<Annotation> pattern_match(std::span<const Token> tokens, std::span<const PatternRule> rules) {
  std::vector<std::string> folded;
  folded.reserve(tokens.size());
  for (const auto& t : tokens) folded.push_back(unicode::fold(t.text));

  std::vector<Annotation> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const auto& rule : rules) {
      auto end = longest_match(rule, tokens, folded, i);
      if (!end) continue;
      Annotation a;
      a.start = tokens[i].start;
      a.end = tokens[*end - 1].end;
      a.concept_id = rule.action.concept_id;
      a.source = AnnotationSource::Pattern;
      a.rule_name = rule.name;
      a.priority = rule.priority;
      if (rule.action.normalizer == Normalizer::Date)
        a.normalized_value = normalize_date(tokens.subspan(i, *end - i));
      out.push_back(std::move(a));
    }
  }
  return out;
}

}  // namespace ontorec
