#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "affekt/config.hpp"
#include "affekt/error.hpp"

using namespace affekt;
using nlohmann::json;

namespace {
std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.field();
  }
  return "<none>";
}
}  // namespace

TEST(Config, Defaults) {
  ServiceConfig c;
  EXPECT_EQ(c.top_k, 10);
  EXPECT_DOUBLE_EQ(c.threshold, 0.30);
  EXPECT_EQ(c.story_bounds.min_items, 1);
  EXPECT_EQ(c.story_bounds.max_items, 3);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ValidationNamesTheField) {
  auto with = [](auto mutate) {
    return [mutate] {
      ServiceConfig c;
      mutate(c);
      c.validate();
    };
  };
  EXPECT_EQ(field_of(with([](ServiceConfig& c) { c.port = -1; })), "port");
  EXPECT_EQ(field_of(with([](ServiceConfig& c) { c.port = 70000; })), "port");
  EXPECT_EQ(field_of(with([](ServiceConfig& c) { c.top_k = 0; })), "top_k");
  EXPECT_EQ(field_of(with([](ServiceConfig& c) { c.threshold = 0.0; })), "threshold");
  EXPECT_EQ(field_of(with([](ServiceConfig& c) { c.threshold = 1.5; })), "threshold");
  EXPECT_EQ(field_of(with([](ServiceConfig& c) { c.story_bounds = {3, 2}; })), "max_story_items");
  EXPECT_EQ(field_of(with([](ServiceConfig& c) { c.story_bounds = {0, 2}; })), "min_story_items");
}

TEST(Config, FromJson) {
  const auto c = config_from_json(json::parse(
      R"({"lexicon":"lex.tsv","top_k":5,"threshold":0.4,"min_story_items":2,"max_story_items":4,
          "port":9000,"host":"0.0.0.0","language":"it","translation_map":"t.json","store":"db",
          "classify_basics":true})"));
  EXPECT_EQ(c.lexicon_path, "lex.tsv");
  EXPECT_EQ(c.top_k, 5);
  EXPECT_DOUBLE_EQ(c.threshold, 0.4);
  EXPECT_EQ(c.story_bounds.min_items, 2);
  EXPECT_EQ(c.story_bounds.max_items, 4);
  EXPECT_EQ(c.port, 9000);
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.language, Language::italian);
  EXPECT_EQ(c.translation_path, "t.json");
  EXPECT_EQ(c.store_path, "db");
  EXPECT_TRUE(c.classify_basics);
}

TEST(Config, RejectsUnknownAndMistyped) {
  EXPECT_EQ(field_of([] { config_from_json(json::parse(R"({"prot":1})")); }), "prot");
  EXPECT_EQ(field_of([] { config_from_json(json::parse(R"({"port":"eighty"})")); }), "port");
  EXPECT_EQ(field_of([] { config_from_json(json::parse(R"({"language":"xx"})")); }), "language");
  EXPECT_THROW(config_from_json(json::array()), Error);
}

TEST(Config, LoadAndEnvironment) {
  const auto path = std::filesystem::temp_directory_path() / "affekt-config-test.json";
  std::ofstream(path) << R"({"port": 1234})";
  EXPECT_EQ(load_config(path.string()).port, 1234);
  std::ofstream(path) << "{";
  EXPECT_THROW(load_config(path.string()), Error);
  EXPECT_THROW(load_config("/nonexistent/config.json"), Error);
  std::filesystem::remove(path);

  ::unsetenv(kConfigEnvVar);
  EXPECT_EQ(config_path_from_env(std::string("x.json")), "x.json");
  EXPECT_FALSE(config_path_from_env(std::nullopt));
  ::setenv(kConfigEnvVar, "env.json", 1);
  EXPECT_EQ(config_path_from_env(std::string("x.json")), "env.json");
  ::unsetenv(kConfigEnvVar);
}
