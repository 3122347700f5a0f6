#pragma once

// Probabilistic typicality logic restricted to propositional literals.
//
// A knowledge base holds rigid inclusions (C ⊑ D, no exceptions) and
// degree-labelled typicality inclusions (p :: T(C) ⊑ D, 0.5 < p <= 1).
// Combining a HEAD and a MODIFIER concept enumerates scenarios (true/false
// choices over their typicality inclusions), scans blocks of equal
// probability from the most probable down, and keeps the first block that
// has a scenario surviving the consistency, triviality and
// MODIFIER-preference filters.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "affekt/wheel.hpp"

namespace affekt {

enum class Polarity { positive, negative };

class PropertyLiteral {
 public:
  // Throws Error(domain) unless term is non-empty, lowercase and has no whitespace.
  PropertyLiteral(std::string term, Polarity polarity = Polarity::positive);

  // "term" or "!term".
  static PropertyLiteral parse(std::string_view text);

  const std::string& term() const noexcept { return term_; }
  Polarity polarity() const noexcept { return polarity_; }
  bool positive() const noexcept { return polarity_ == Polarity::positive; }

  PropertyLiteral negated() const;
  bool conflicts_with(const PropertyLiteral& other) const noexcept {
    return term_ == other.term_ && polarity_ != other.polarity_;
  }
  std::string to_string() const;

  friend auto operator<=>(const PropertyLiteral&, const PropertyLiteral&) = default;

 private:
  std::string term_;
  Polarity polarity_;
};

struct RigidInclusion {
  std::string subject;
  PropertyLiteral property;
};

class TypicalityInclusion {
 public:
  // Throws Error(domain) unless 0.5 < degree <= 1.
  TypicalityInclusion(std::string subject, PropertyLiteral property, double degree);

  const std::string& subject() const noexcept { return subject_; }
  const PropertyLiteral& property() const noexcept { return property_; }
  double degree() const noexcept { return degree_; }

 private:
  std::string subject_;
  PropertyLiteral property_;
  double degree_;
};

bool valid_degree(double degree) noexcept;

// ABox entry: an individual asserted to belong to a concept.
struct ConceptAssertion {
  std::string individual;
  std::string concept_name;
};

class KnowledgeBase {
 public:
  // Both throw Error(contract) when the insertion would break the KB
  // invariants: duplicate typical (subject, literal), a typical set holding a
  // literal and its negation, or a rigid set holding both polarities.
  void add_rigid(RigidInclusion inclusion);
  void add_typical(TypicalityInclusion inclusion);
  void add_assertion(ConceptAssertion assertion) { assertions_.push_back(std::move(assertion)); }

  bool has_concept(std::string_view subject) const;
  std::vector<std::string> concepts() const;
  std::vector<TypicalityInclusion> typical_of(std::string_view subject) const;
  std::vector<PropertyLiteral> rigid_of(std::string_view subject) const;

  const std::vector<RigidInclusion>& rigid() const noexcept { return rigid_; }
  const std::vector<TypicalityInclusion>& typical() const noexcept { return typical_; }
  const std::vector<ConceptAssertion>& assertions() const noexcept { return assertions_; }

 private:
  std::vector<RigidInclusion> rigid_;
  std::vector<TypicalityInclusion> typical_;
  std::vector<ConceptAssertion> assertions_;
};

// Line format: `rigid <subject> <[!]term>` / `typ <subject> <[!]term> <degree>`,
// `#` starts a comment. Throws Error(parse) with the line number.
KnowledgeBase parse_kb(std::istream& in);
std::string format_kb(const KnowledgeBase& kb);

inline constexpr int kDefaultScenarioCap = 24;
inline constexpr double kBlockTolerance = 1e-12;

// Selection bit i refers to inclusion i of the combination (HEAD first).
struct Scenario {
  std::uint32_t selection = 0;
  int size = 0;
  double probability = 1.0;

  bool selected(int i) const noexcept { return (selection >> i) & 1u; }
};

// Product of degree_i over selected positions and (1 - degree_i) elsewhere.
double scenario_probability(std::uint32_t selection,
                            std::span<const TypicalityInclusion> inclusions);
// Throws Error(contract) if the lengths differ.
double scenario_probability(const std::vector<bool>& selection,
                            std::span<const TypicalityInclusion> inclusions);

// All 2^n scenarios ordered by selection mask. Throws Error(domain)
// ("combination too large") when n exceeds cap.
std::vector<Scenario> enumerate_scenarios(std::span<const TypicalityInclusion> head,
                                          std::span<const TypicalityInclusion> modifier,
                                          int cap = kDefaultScenarioCap);

enum class ScenarioClass { inconsistent, trivial, modifier_preferring, admissible };
const char* to_string(ScenarioClass c) noexcept;

ScenarioClass classify_scenario(const Scenario& scenario,
                                std::span<const TypicalityInclusion> head,
                                std::span<const TypicalityInclusion> modifier,
                                std::span<const PropertyLiteral> rigid);

struct TypicalProperty {
  PropertyLiteral literal;
  double degree;

  friend bool operator==(const TypicalProperty&, const TypicalProperty&) = default;
};

// Prototype of a concept. head/modifier are empty for a non-combined concept.
struct Prototype {
  std::string concept_name;
  std::string head;
  std::string modifier;
  std::vector<PropertyLiteral> rigid;
  // Sorted by degree descending, then literal.
  std::vector<TypicalProperty> typical;

  bool combined() const noexcept { return !head.empty(); }
  friend bool operator==(const Prototype&, const Prototype&) = default;
};
using CombinedPrototype = Prototype;

void sort_typical(std::vector<TypicalProperty>& typical);

// prototype/1 document.
nlohmann::json to_json(const Prototype& prototype);
Prototype prototype_from_json(const nlohmann::json& doc);

struct CombineOptions {
  int cap = kDefaultScenarioCap;
  double tolerance = kBlockTolerance;
};

// Core combination over explicit inclusion lists. head/modifier names only
// label the result.
CombinedPrototype combine_concepts(std::string_view head_name,
                                   std::span<const TypicalityInclusion> head,
                                   std::span<const PropertyLiteral> head_rigid,
                                   std::string_view modifier_name,
                                   std::span<const TypicalityInclusion> modifier,
                                   std::span<const PropertyLiteral> modifier_rigid,
                                   const CombineOptions& options = {});

// Throws Error(not_found) for a concept absent from kb and Error(contract)
// for a concept without typicality inclusions.
CombinedPrototype combine(const KnowledgeBase& kb, std::string_view head,
                          std::string_view modifier, const CombineOptions& options = {});

CombinedPrototype combine(const Prototype& head, const Prototype& modifier,
                          const CombineOptions& options = {});

// Chooses which component of a dyad acts as HEAD. By default the component
// with the lower canonical sector wins; overrides are keyed by dyad.
class HeadRule {
 public:
  void override_head(EmotionId dyad, EmotionId head);
  EmotionId head_for(const WheelCatalog& wheel, EmotionId dyad) const;

 private:
  std::map<EmotionId, EmotionId> overrides_;
};

// One prototype per dyad. Throws Error(unprocessable) naming any basic emotion
// whose prototype is missing or has no typical properties.
std::map<EmotionId, CombinedPrototype> generate_compound_prototypes(
    const WheelCatalog& wheel, const std::map<EmotionId, Prototype>& basics,
    const HeadRule& head_rule = {}, const CombineOptions& options = {});

}  // namespace affekt
