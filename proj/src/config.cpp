#include "affekt/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "affekt/error.hpp"

namespace affekt {
using nlohmann::json;

void ServiceConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorKind::domain, "invalid config field '" + field + "': " + why, field);
  };
  if (top_k < 1) fail("top_k", "must be at least 1");
  if (!(threshold > 0.0 && threshold <= 1.0)) fail("threshold", "must lie in (0, 1]");
  if (story_bounds.min_items < 1) fail("min_story_items", "must be at least 1");
  if (story_bounds.max_items < story_bounds.min_items)
    fail("max_story_items", "must not be below min_story_items");
  if (port < 0 || port > 65535) fail("port", "must lie in 0..65535");
  if (host.empty()) fail("host", "must not be empty");
  if (store_path.empty()) fail("store", "must not be empty");
}

ServiceConfig config_from_json(const json& doc, ServiceConfig base) {
  if (!doc.is_object()) throw Error(ErrorKind::schema, "config must be a JSON object");
  static const std::set<std::string> known = {
      "lexicon", "top_k", "threshold", "min_story_items", "max_story_items", "port",
      "host", "language", "translation_map", "store", "classify_basics"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw Error(ErrorKind::schema, "unknown config field '" + key + "'", key);

  auto get = [&](const char* key, auto& target) {
    if (!doc.contains(key)) return;
    try {
      doc.at(key).get_to(target);
    } catch (const json::exception&) {
      throw Error(ErrorKind::schema, std::string("config field '") + key + "' has the wrong type", key);
    }
  };
  get("lexicon", base.lexicon_path);
  get("top_k", base.top_k);
  get("threshold", base.threshold);
  get("min_story_items", base.story_bounds.min_items);
  get("max_story_items", base.story_bounds.max_items);
  get("port", base.port);
  get("host", base.host);
  get("translation_map", base.translation_path);
  get("store", base.store_path);
  get("classify_basics", base.classify_basics);
  if (doc.contains("language")) {
    std::string name;
    get("language", name);
    auto lang = parse_language(name);
    if (!lang) throw Error(ErrorKind::domain, "unknown language '" + name + "'", "language");
    base.language = *lang;
  }
  return base;
}

ServiceConfig load_config(const std::string& path, ServiceConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open config '" + path + "'", path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, "config " + path + ": " + e.what());
  }
  return config_from_json(doc, std::move(base));
}

std::optional<std::string> config_path_from_env(std::optional<std::string> fallback) {
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return std::string(env);
  return fallback;
}

}  // namespace affekt
