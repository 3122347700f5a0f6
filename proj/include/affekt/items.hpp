#pragma once

// Item ingestion: item/1 JSON records, tokenization with a pluggable
// lemmatizer, and term-frequency profiles.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace affekt {

struct ItemRecord {
  std::string id;
  std::string title;
  std::optional<std::string> author;
  std::string description;
  std::vector<std::string> annotations;

  friend bool operator==(const ItemRecord&, const ItemRecord&) = default;
};

// Throws Error(parse) on malformed JSON and Error(schema) naming the field
// when id or description is missing or mistyped.
ItemRecord parse_item(std::string_view document);
ItemRecord item_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ItemRecord& item);

struct SourceDocument {
  std::string origin;  // file name, or path:line for JSON-lines input
  std::string text;
};

// Every *.json file of a directory (sorted by name) or every non-blank line
// of a JSON-lines file. Throws Error(io).
std::vector<SourceDocument> read_documents(const std::string& path);

// Throws Error(conflict) on duplicate ids.
std::vector<ItemRecord> load_items(const std::string& path);

enum class Language { english, italian };
std::optional<Language> parse_language(std::string_view name);
const std::set<std::string>& stopwords(Language language);

using Lemmatizer = std::function<std::string(std::string_view token)>;

// Built-in suffix rules, first match wins, tokens of three or fewer code
// points are left alone:
//   -sses -> -ss        classes   -> class
//   -ies  -> -y         stories   -> story
//   -ied  -> -y         cried     -> cry
//   -xes/-ches/-shes/-zzes drop -es
//   -s    -> ""         seas      -> sea     (not after s, u or i)
//   -ing  -> ""         feeling   -> feel    (stem of 4+, doubled final consonant undone)
std::string rule_lemmatize(std::string_view token);

// Lowercases, splits on anything that is not a letter (so punctuation and
// digits separate and vanish), drops stopwords and tokens shorter than two
// code points, then lemmatizes.
std::vector<std::string> normalize_and_lemmatize(std::string_view text,
                                                 const std::set<std::string>& stopwords,
                                                 const Lemmatizer& lemmatizer = rule_lemmatize);

// count / total per distinct lemma. Throws Error(unprocessable) on empty input.
std::map<std::string, double> term_frequencies(const std::vector<std::string>& lemmas);

struct ItemProfile {
  std::string id;
  std::map<std::string, double> frequencies;

  std::set<std::string> lemma_set() const;
  friend bool operator==(const ItemProfile&, const ItemProfile&) = default;
};

struct TextPipeline {
  Language language = Language::english;
  Lemmatizer lemmatizer = rule_lemmatize;

  std::vector<std::string> lemmas(const ItemRecord& item) const;
  // Throws Error(unprocessable, field = item id) when nothing survives
  // normalization.
  ItemProfile profile(const ItemRecord& item) const;
};

// profile/1
nlohmann::json to_json(const ItemProfile& profile);
ItemProfile profile_from_json(const nlohmann::json& doc);

}  // namespace affekt
