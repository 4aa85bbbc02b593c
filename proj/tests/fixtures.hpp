#pragma once
// Small hand-built ontology shared by the unit tests.

#include <string>
#include <vector>

#include "ontorec/kbase.hpp"
#include "ontorec/lexicon.hpp"
#include "ontorec/pattern.hpp"

namespace fixtures {

inline ontorec::KnowledgeBase economic_kb() {
  using ontorec::Concept;
  ontorec::KnowledgeBase kb;
  kb.add_concept({"upper:Thing", "Thing", {}});
  kb.add_concept({"upper:Event", "Event", {"upper:Thing"}});
  kb.add_concept({"upper:Temporal", "Temporal", {"upper:Thing"}});
  kb.add_concept({"upper:Location", "Location", {"upper:Thing"}});
  kb.add_concept({"upper:Organization", "Organization", {"upper:Thing"}});

  kb.add_concept({"domain:EconomicEvent", "Economic event", {"upper:Event"}});
  kb.add_concept({"domain:CompanyTakeover", "Company takeover", {"domain:EconomicEvent"}});
  kb.add_concept({"domain:Layoff", "Layoff", {"domain:EconomicEvent"}});
  kb.add_concept({"domain:EconomicSector", "Economic sector", {}});
  kb.add_concept({"domain:Banking", "Banking", {"domain:EconomicSector"}});
  kb.add_concept({"domain:TransversalProject", "Transversal project", {}});
  kb.add_concept({"domain:PublicTender", "Public tender", {"domain:TransversalProject"}});
  kb.add_concept({"domain:Company", "Company", {"upper:Organization"}});
  kb.add_concept({"domain:Bank", "Bank", {"domain:Company"}});
  kb.add_concept({"domain:City", "City", {"upper:Location"}});

  kb.add_concept({"lexical:Gazetteer", "Gazetteer", {}});
  kb.add_concept({"corpus:Article", "Article", {}});

  kb.add_property({"domain:locatedIn", "domain:Company", "upper:Location"});
  kb.add_property({"domain:foundedOn", "domain:Company", "date"});
  kb.add_property({"domain:employees", "domain:Company", "integer"});

  kb.add_individual({"domain:acme", "Acme", {"domain:Company"}});
  kb.add_individual({"domain:bdb", "Banque de Bourgogne", {"domain:Bank"}});
  kb.add_individual({"domain:dijon", "Dijon", {"domain:City"}});
  kb.add_individual({"corpus:a1", "First article", {"corpus:Article"}});
  return kb;
}

inline std::vector<ontorec::LexicalEntry> economic_lexicon() {
  return {
      {"Banque de Bourgogne", "domain:bdb", false},
      {"Banque", "domain:Bank", false},
      {"Dijon", "domain:dijon", false},
      {"rachat", "domain:CompanyTakeover", false},
      {"acquisition", "domain:CompanyTakeover", false},
      {"licenciements", "domain:Layoff", false},
      {"Acme", "domain:acme", true},
  };
}

inline ontorec::PatternRule company_rule() {
  using ontorec::Matcher;
  ontorec::PatternRule r;
  r.name = "fr-company";
  r.priority = 5;
  r.pattern = {Matcher::regex("[A-Z].*"), Matcher::optional({Matcher::regex("[A-Z].*")}),
               Matcher::regex("SARL|SAS|SASU|SA|EURL|SNC")};
  r.action = {"domain:Company", true, ontorec::Normalizer::None};
  return r;
}

inline std::vector<ontorec::PatternRule> economic_rules() { return {ontorec::french_date_rule(), company_rule()}; }

}  // namespace fixtures
