#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "affekt/classify.hpp"
#include "affekt/items.hpp"
#include "affekt/lexicon.hpp"

namespace affekt {

inline constexpr const char* kConfigEnvVar = "AFFEKT_CONFIG";

struct ServiceConfig {
  std::string lexicon_path;
  int top_k = kDefaultTopK;
  double threshold = kDefaultThreshold;
  StoryBounds story_bounds;
  int port = 8080;
  std::string host = "127.0.0.1";
  Language language = Language::english;
  std::string translation_path;  // optional
  std::string store_path = "affekt-store";
  // Also assign the eight basic emotions, not only the dyads.
  bool classify_basics = false;

  // Throws Error(domain) naming the first invalid field.
  void validate() const;
};

// Keys: lexicon, top_k, threshold, min_story_items, max_story_items, port,
// host, language, translation_map, store, classify_basics. Unknown keys are
// rejected. Throws Error(schema|domain) naming the field.
ServiceConfig config_from_json(const nlohmann::json& doc, ServiceConfig base = {});
ServiceConfig load_config(const std::string& path, ServiceConfig base = {});

// Path from AFFEKT_CONFIG when set, else `fallback`.
std::optional<std::string> config_path_from_env(std::optional<std::string> fallback);

}  // namespace affekt
