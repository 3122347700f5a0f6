#pragma once

// Emotion assignment for items and stories, diversity-seeking story
// recommendation, and N-Triples export of the resulting assertions.

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "affekt/items.hpp"
#include "affekt/tcl.hpp"
#include "affekt/wheel.hpp"

namespace affekt {

inline constexpr double kDefaultThreshold = 0.30;

enum class TargetKind { item, story };

struct EmotionAssignment {
  TargetKind target_kind = TargetKind::item;
  std::string target;
  EmotionId emotion;
  // Fraction of the prototype's typical literals matched.
  double score = 0;
  // Matched literals as written in the prototype ("term" or "!term").
  std::vector<std::string> matched;

  friend bool operator==(const EmotionAssignment&, const EmotionAssignment&) = default;
};

// Item lemma -> lexicon lemma.
using TranslationMap = std::map<std::string, std::string>;
// JSON object of string -> string. Throws Error(io) / Error(schema).
TranslationMap load_translation_map(const std::string& path);

struct ClassifyOptions {
  double threshold = kDefaultThreshold;
  bool check_rigid = true;
  const TranslationMap* translation = nullptr;
};

// Assigns every prototype whose rigid literals hold and whose typical
// literals are matched at a fraction >= threshold (inclusive). A positive
// literal matches when its term is among the item lemmas, a negative one when
// it is absent. Prototypes without typical literals are skipped, with a note
// appended to warnings when given. Output follows emotion id order.
std::vector<EmotionAssignment> classify_item(const ItemProfile& profile,
                                             const std::map<EmotionId, Prototype>& prototypes,
                                             const ClassifyOptions& options = {},
                                             std::vector<std::string>* warnings = nullptr);

// --- Stories -----------------------------------------------------------------

// The fixed emoji palette of the curation client.
const std::vector<std::string>& emoji_names();

struct TemplateComments {
  std::string reminds;  // "it reminds me of ..."
  std::string think;    // "it makes me think of ..."
  std::string feel;     // "it makes me feel ..."

  friend bool operator==(const TemplateComments&, const TemplateComments&) = default;
};

struct StoryItem {
  std::string item_id;
  std::vector<std::string> emojis;
  std::vector<std::string> tags;
  TemplateComments comments;

  bool annotated() const;
  friend bool operator==(const StoryItem&, const StoryItem&) = default;
};

struct Story {
  std::string id;
  std::string title;
  std::string creator;
  std::vector<StoryItem> items;

  friend bool operator==(const Story&, const Story&) = default;
};

struct StoryBounds {
  int min_items = 1;
  int max_items = 3;
};

// story/1. Throws Error(parse|schema).
Story parse_story(std::string_view document);
Story story_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Story& story);
// Same input layouts as load_items. Throws Error(conflict) on duplicate ids.
std::vector<Story> load_stories(const std::string& path);

// Throws Error(domain, field "items") on a bounds violation and
// Error(schema, "annotation required") for an item without annotations.
void validate_story(const Story& story, const StoryBounds& bounds = {});

struct StoryEmotionProfile {
  std::string story_id;
  std::map<EmotionId, double> emotions;

  friend bool operator==(const StoryEmotionProfile&, const StoryEmotionProfile&) = default;
};

// Union of member-item emotions; each score is the mean over the items that
// carry the emotion. Throws Error(unprocessable) naming an unclassified item.
StoryEmotionProfile classify_story(
    const Story& story, const std::map<std::string, std::vector<EmotionAssignment>>& assignments);

nlohmann::json to_json(const StoryEmotionProfile& profile, const WheelCatalog& wheel = build_wheel());

// --- Recommendation ----------------------------------------------------------

struct ProfiledStory {
  std::string id;
  std::string creator;
  StoryEmotionProfile profile;
};

struct RecommendationEntry {
  std::string story_id;
  double relevance = 0;
  EmotionId source_emotion;
  EmotionId target_emotion;

  friend bool operator==(const RecommendationEntry&, const RecommendationEntry&) = default;
};

struct Recommendation {
  std::string source;
  EmotionRelation kind = EmotionRelation::same;
  std::vector<RecommendationEntry> entries;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

// Ranks stories by other creators that carry an emotion standing in `kind`
// to one of the source's emotions. Relevance is the best product of the two
// scores; the winning pair is reported, ties going to the lower emotion ids.
// Throws Error(not_found) for an unknown source and Error(unprocessable,
// "no emotions extracted") for a source with an empty profile.
Recommendation recommend(const std::string& source, const std::vector<ProfiledStory>& catalog,
                         EmotionRelation kind, std::size_t limit,
                         const WheelCatalog& wheel = build_wheel());

nlohmann::json to_json(const Recommendation& rec, const WheelCatalog& wheel = build_wheel());

// --- Triples -----------------------------------------------------------------

std::vector<EmotionAssignment> story_assignments(const StoryEmotionProfile& profile);

// triples/1: one `<urn:spice:item:ID> <urn:spice:evokes> <urn:spice:emotion:Name> .`
// line per distinct assertion, sorted by subject then object.
std::string export_assignments(const std::vector<EmotionAssignment>& assignments,
                               const WheelCatalog& wheel = build_wheel());

}  // namespace affekt
