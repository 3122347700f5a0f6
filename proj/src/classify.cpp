#include "affekt/classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>

#include "affekt/error.hpp"
#include "affekt/text.hpp"

namespace affekt {
using nlohmann::json;

namespace {

// Inclusive comparison of match fractions against the threshold; 3/10 must
// pass 0.30 regardless of rounding in either value.
constexpr double kScoreEpsilon = 1e-12;

}  // namespace

TranslationMap load_translation_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open translation map '" + path + "'", path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, "translation map " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::schema, "translation map must be a JSON object");
  TranslationMap map;
  for (const auto& [from, to] : doc.items()) {
    if (!to.is_string())
      throw Error(ErrorKind::schema, "translation of '" + from + "' must be a string", from);
    map[to_lower(from)] = to_lower(to.get<std::string>());
  }
  return map;
}

std::vector<EmotionAssignment> classify_item(const ItemProfile& profile,
                                             const std::map<EmotionId, Prototype>& prototypes,
                                             const ClassifyOptions& options,
                                             std::vector<std::string>* warnings) {
  if (!(options.threshold > 0.0 && options.threshold <= 1.0))
    throw Error(ErrorKind::domain, "threshold must lie in (0, 1]", "threshold");

  std::set<std::string> lemmas;
  for (const auto& [lemma, _] : profile.frequencies) {
    if (options.translation) {
      if (auto it = options.translation->find(lemma); it != options.translation->end()) {
        lemmas.insert(it->second);
        continue;
      }
    }
    lemmas.insert(lemma);
  }
  auto holds = [&](const PropertyLiteral& lit) {
    return lemmas.count(lit.term()) ? lit.positive() : !lit.positive();
  };

  std::vector<EmotionAssignment> out;
  for (const auto& [emotion, proto] : prototypes) {
    if (proto.typical.empty()) {
      if (warnings) warnings->push_back("prototype " + proto.concept_name + " has no typical properties; skipped");
      continue;
    }
    if (options.check_rigid &&
        !std::all_of(proto.rigid.begin(), proto.rigid.end(), holds))
      continue;
    EmotionAssignment a;
    a.target = profile.id;
    a.emotion = emotion;
    for (const auto& t : proto.typical)
      if (holds(t.literal)) a.matched.push_back(t.literal.to_string());
    a.score = static_cast<double>(a.matched.size()) / static_cast<double>(proto.typical.size());
    if (a.score + kScoreEpsilon >= options.threshold) {
      std::sort(a.matched.begin(), a.matched.end());
      out.push_back(std::move(a));
    }
  }
  return out;
}

// --- Stories -----------------------------------------------------------------

const std::vector<std::string>& emoji_names() {
  static const std::vector<std::string> names = {"love", "curiosity", "delight", "joy",
                                                 "fear", "sadness",   "disgust"};
  return names;
}

bool StoryItem::annotated() const {
  auto filled = [](const std::string& s) { return !trim(s).empty(); };
  return !emojis.empty() || std::any_of(tags.begin(), tags.end(), filled) ||
         filled(comments.reminds) || filled(comments.think) || filled(comments.feel);
}

namespace {

std::string string_field(const json& doc, const std::string& field, bool required,
                         const std::string& path) {
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) {
    if (required) throw Error(ErrorKind::schema, "missing field '" + path + field + "'", path + field);
    return {};
  }
  if (!it->is_string())
    throw Error(ErrorKind::schema, "field '" + path + field + "' must be a string", path + field);
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& doc, const std::string& field,
                                     const std::string& path) {
  std::vector<std::string> out;
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) return out;
  if (!it->is_array())
    throw Error(ErrorKind::schema, "field '" + path + field + "' must be an array", path + field);
  for (const auto& v : *it) {
    if (!v.is_string())
      throw Error(ErrorKind::schema, "field '" + path + field + "' must hold strings", path + field);
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

Story story_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::schema, "story must be a JSON object");
  Story story;
  story.id = string_field(doc, "id", true, "");
  if (story.id.empty()) throw Error(ErrorKind::schema, "field 'id' is empty", "id");
  story.title = string_field(doc, "title", false, "");
  story.creator = string_field(doc, "creator", true, "");
  auto items = doc.find("items");
  if (items == doc.end() || !items->is_array())
    throw Error(ErrorKind::schema, "field 'items' must be an array", "items");
  for (std::size_t i = 0; i < items->size(); ++i) {
    const auto& entry = (*items)[i];
    const std::string path = "items[" + std::to_string(i) + "].";
    if (!entry.is_object())
      throw Error(ErrorKind::schema, "story items must be objects", "items[" + std::to_string(i) + "]");
    StoryItem item;
    item.item_id = string_field(entry, "itemId", true, path);
    item.emojis = string_list(entry, "emojis", path);
    for (const auto& e : item.emojis)
      if (std::find(emoji_names().begin(), emoji_names().end(), e) == emoji_names().end())
        throw Error(ErrorKind::schema, "unknown emoji '" + e + "'", path + "emojis");
    item.tags = string_list(entry, "tags", path);
    if (auto c = entry.find("comments"); c != entry.end() && !c->is_null()) {
      if (!c->is_object())
        throw Error(ErrorKind::schema, "field '" + path + "comments' must be an object", path + "comments");
      for (const auto& [key, _] : c->items())
        if (key != "reminds" && key != "think" && key != "feel")
          throw Error(ErrorKind::schema, "unknown comment template '" + key + "'", path + "comments");
      item.comments.reminds = string_field(*c, "reminds", false, path + "comments.");
      item.comments.think = string_field(*c, "think", false, path + "comments.");
      item.comments.feel = string_field(*c, "feel", false, path + "comments.");
    }
    story.items.push_back(std::move(item));
  }
  return story;
}

Story parse_story(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("malformed story JSON: ") + e.what());
  }
  return story_from_json(doc);
}

std::vector<Story> load_stories(const std::string& path) {
  std::vector<Story> stories;
  std::set<std::string> seen;
  for (const auto& doc : read_documents(path)) {
    try {
      stories.push_back(parse_story(doc.text));
    } catch (const Error& e) {
      throw Error(e.kind(), doc.origin + ": " + e.what(), e.field());
    }
    if (!seen.insert(stories.back().id).second)
      throw Error(ErrorKind::conflict, "duplicate story id '" + stories.back().id + "'",
                  stories.back().id);
  }
  return stories;
}

json to_json(const Story& story) {
  json items = json::array();
  for (const auto& i : story.items) {
    items.push_back({{"itemId", i.item_id},
                     {"emojis", i.emojis},
                     {"tags", i.tags},
                     {"comments",
                      {{"reminds", i.comments.reminds},
                       {"think", i.comments.think},
                       {"feel", i.comments.feel}}}});
  }
  return {{"id", story.id}, {"title", story.title}, {"creator", story.creator}, {"items", items}};
}

void validate_story(const Story& story, const StoryBounds& bounds) {
  const auto n = static_cast<int>(story.items.size());
  if (n < bounds.min_items || n > bounds.max_items)
    throw Error(ErrorKind::domain,
                "story has " + std::to_string(n) + " items; allowed " +
                    std::to_string(bounds.min_items) + ".." + std::to_string(bounds.max_items),
                "items");
  for (std::size_t i = 0; i < story.items.size(); ++i)
    if (!story.items[i].annotated())
      throw Error(ErrorKind::schema,
                  "annotation required for item '" + story.items[i].item_id + "'",
                  "items[" + std::to_string(i) + "]");
}

StoryEmotionProfile classify_story(
    const Story& story, const std::map<std::string, std::vector<EmotionAssignment>>& assignments) {
  std::map<EmotionId, std::pair<double, int>> sums;
  std::set<std::string> seen;
  for (const auto& item : story.items) {
    auto it = assignments.find(item.item_id);
    if (it == assignments.end())
      throw Error(ErrorKind::unprocessable, "unknown item '" + item.item_id + "'", item.item_id);
    // A story repeating an artwork counts its emotions once.
    if (!seen.insert(item.item_id).second) continue;
    for (const auto& a : it->second) {
      auto& [sum, count] = sums[a.emotion];
      sum += a.score;
      ++count;
    }
  }
  StoryEmotionProfile profile{story.id, {}};
  for (const auto& [emotion, acc] : sums) profile.emotions[emotion] = acc.first / acc.second;
  return profile;
}

json to_json(const StoryEmotionProfile& profile, const WheelCatalog& wheel) {
  json emotions = json::object();
  for (const auto& [e, score] : profile.emotions) emotions[wheel.name(e)] = score;
  return {{"storyId", profile.story_id}, {"emotions", std::move(emotions)}};
}

// --- Recommendation ----------------------------------------------------------

Recommendation recommend(const std::string& source, const std::vector<ProfiledStory>& catalog,
                         EmotionRelation kind, std::size_t limit, const WheelCatalog& wheel) {
  if (kind == EmotionRelation::none)
    throw Error(ErrorKind::contract, "recommendation kind must be same, similar or opposite", "kind");
  if (limit == 0) throw Error(ErrorKind::contract, "limit must be positive", "limit");

  auto src = std::find_if(catalog.begin(), catalog.end(),
                          [&](const ProfiledStory& s) { return s.id == source; });
  if (src == catalog.end())
    throw Error(ErrorKind::not_found, "unknown story '" + source + "'", source);
  if (src->profile.emotions.empty())
    throw Error(ErrorKind::unprocessable, "no emotions extracted for story '" + source + "'", source);

  Recommendation rec{source, kind, {}};
  for (const auto& candidate : catalog) {
    if (candidate.id == source || candidate.creator == src->creator) continue;
    std::optional<RecommendationEntry> best;
    // Emotion maps iterate in id order, so the first maximum is the lowest pair.
    for (const auto& [e1, s1] : src->profile.emotions) {
      for (const auto& [e2, s2] : candidate.profile.emotions) {
        if (wheel.relation(e1, e2) != kind) continue;
        const double relevance = s1 * s2;
        if (!best || relevance > best->relevance) best = RecommendationEntry{candidate.id, relevance, e1, e2};
      }
    }
    if (best) rec.entries.push_back(*best);
  }
  std::sort(rec.entries.begin(), rec.entries.end(), [](const auto& a, const auto& b) {
    if (a.relevance != b.relevance) return a.relevance > b.relevance;
    return a.story_id < b.story_id;
  });
  if (rec.entries.size() > limit) rec.entries.resize(limit);
  return rec;
}

json to_json(const Recommendation& rec, const WheelCatalog& wheel) {
  json entries = json::array();
  for (const auto& e : rec.entries) {
    entries.push_back({{"storyId", e.story_id},
                       {"relevance", e.relevance},
                       {"sourceEmotion", wheel.name(e.source_emotion)},
                       {"targetEmotion", wheel.name(e.target_emotion)}});
  }
  return {{"source", rec.source}, {"kind", to_string(rec.kind)}, {"entries", std::move(entries)}};
}

// --- Triples -----------------------------------------------------------------

std::vector<EmotionAssignment> story_assignments(const StoryEmotionProfile& profile) {
  std::vector<EmotionAssignment> out;
  for (const auto& [emotion, score] : profile.emotions)
    out.push_back({TargetKind::story, profile.story_id, emotion, score, {}});
  return out;
}

namespace {

std::string iri_escape(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace

std::string export_assignments(const std::vector<EmotionAssignment>& assignments,
                               const WheelCatalog& wheel) {
  std::set<std::pair<std::string, std::string>> triples;
  for (const auto& a : assignments) {
    const char* kind = a.target_kind == TargetKind::item ? "item" : "story";
    triples.emplace("<urn:spice:" + std::string(kind) + ":" + iri_escape(a.target) + ">",
                    "<urn:spice:emotion:" + iri_escape(wheel.name(a.emotion)) + ">");
  }
  std::string out;
  for (const auto& [subject, object] : triples)
    out += subject + " <urn:spice:evokes> " + object + " .\n";
  return out;
}

}  // namespace affekt
