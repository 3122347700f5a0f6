#include <gtest/gtest.h>

#include <cstdlib>

#include "affekt/tcl.hpp"
#include "support/e2e.hpp"
#include "support/oracle.hpp"

using namespace affekt;
using testing_support::fixture;
using testing_support::TempDir;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  Run r;
  r.code = e2e::cli(args, r.out, r.err);
  return r;
}

const std::string kLexicon = fixture("lexicon.tsv").string();
}  // namespace

TEST(Cli, ServeRejectsNegativePort) {
  const auto r = invoke({"serve", "--port", "-1", "--lexicon", kLexicon});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("port"), std::string::npos) << r.err;
}

TEST(Cli, CombineJoyTrustIsLoveAndMatchesOracle) {
  const auto r = invoke({"combine", "--lexicon", kLexicon, "--head", "joy", "--modifier", "trust"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto proto = prototype_from_json(nlohmann::json::parse(r.out));
  EXPECT_EQ(proto.concept_name, "Love");
  EXPECT_EQ(proto.head, "Joy");
  EXPECT_EQ(proto.modifier, "Trust");

  const auto basics = testing_support::fixture_prototypes().basics;
  auto inclusions = [](const Prototype& p) {
    std::vector<TypicalityInclusion> out;
    for (const auto& t : p.typical) out.emplace_back(p.concept_name, t.literal, t.degree);
    return out;
  };
  const auto& wheel = build_wheel();
  const auto expected = oracle::combine(inclusions(basics.at(wheel.at("Joy"))),
                                        inclusions(basics.at(wheel.at("Trust"))), {});
  EXPECT_EQ(proto.typical, expected);
  EXPECT_EQ(proto.typical.size(), 19u);
}

TEST(Cli, CombineOppositePairKeepsCompositeName) {
  const auto r = invoke({"combine", "--lexicon", kLexicon, "--head", "joy", "--modifier", "sadness"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("concept"), "Joy+Sadness");
}

TEST(Cli, CombineValidation) {
  EXPECT_EQ(invoke({"combine", "--lexicon", kLexicon, "--head", "love", "--modifier", "trust"}).code, 1);
  EXPECT_EQ(invoke({"combine", "--lexicon", kLexicon, "--head", "joy", "--modifier", "joy"}).code, 1);
  EXPECT_EQ(invoke({"combine", "--head", "joy"}).code, 1);
  TempDir dir("cli-noproto");
  const auto none = invoke({"combine", "--store", dir.str(), "--head", "joy", "--modifier", "trust"});
  EXPECT_EQ(none.code, 1);
  EXPECT_NE(none.err.find("lexicon"), std::string::npos);
  EXPECT_EQ(invoke({"combine", "--lexicon", "/nonexistent.tsv", "--head", "joy", "--modifier", "trust"}).code, 2);
}

TEST(Cli, ClassifyAssignsCuriosityToOwl) {
  const auto r = invoke({"classify", "--lexicon", kLexicon, "--item", fixture("items/gufo-1.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("id"), "gufo-1");
  EXPECT_EQ(doc.at("emotions")[0].at("emotion"), "Curiosity");
  EXPECT_GE(doc.at("emotions")[0].at("score").get<double>(), 0.30);

  EXPECT_EQ(invoke({"classify", "--lexicon", kLexicon, "--item", "/nonexistent.json"}).code, 2);
}

TEST(Cli, IngestRecommendExport) {
  TempDir dir("cli-e2e");
  const auto outcome = e2e::run_fixture_catalog(dir.path());
  ASSERT_TRUE(outcome.failure.empty()) << outcome.failure;
  const auto& recs = outcome.artifacts.at("recommendations.tsv");
  EXPECT_NE(recs.find("# S1 opposite\nS4\t"), std::string::npos) << recs;

  const std::string store = (dir / "store").string();
  const auto sorted = invoke({"recommend", "--store", store, "--story", "S2", "--kind", "similar"});
  ASSERT_EQ(sorted.code, 0);
  EXPECT_NE(sorted.out.find("S3\t"), std::string::npos);

  const auto bad_kind = invoke({"recommend", "--store", store, "--story", "S1", "--kind", "inverse"});
  EXPECT_EQ(bad_kind.code, 1);
  EXPECT_NE(bad_kind.err.find("kind"), std::string::npos);
  EXPECT_EQ(invoke({"recommend", "--store", store, "--story", "S99", "--kind", "same"}).code, 1);
  EXPECT_EQ(invoke({"recommend", "--store", store, "--story", "S1", "--kind", "same", "--limit", "0"}).code, 1);

  const auto stdout_triples = invoke({"export", "--store", store, "--triples", "-"});
  EXPECT_EQ(stdout_triples.out, outcome.artifacts.at("triples.nt"));
  EXPECT_EQ(invoke({"export", "--store", store, "--triples", "/nonexistent/dir/t.nt"}).code, 2);

  // Prototypes saved by ingest serve later commands without a lexicon.
  const auto again = invoke({"classify", "--store", store, "--item", fixture("items/39138.json").string()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_NE(again.out.find("Curiosity"), std::string::npos);

  // Re-ingesting the same catalog is idempotent.
  const auto repeat = invoke({"ingest", "--store", store, "--lexicon", kLexicon, "--items",
                           fixture("items").string(), "--stories", fixture("stories.jsonl").string()});
  ASSERT_EQ(repeat.code, 0) << repeat.err;
  EXPECT_EQ(repeat.out, outcome.artifacts.at("ingest.json"));
}

TEST(Cli, IngestErrors) {
  TempDir dir("cli-ingest");
  EXPECT_EQ(invoke({"ingest", "--store", dir.str(), "--items", fixture("items").string()}).code, 1);
  EXPECT_EQ(invoke({"ingest", "--store", dir.str(), "--lexicon", kLexicon, "--items", "/nonexistent.jsonl"}).code, 2);
  EXPECT_EQ(invoke({"ingest", "--store", dir.str(), "--lexicon", kLexicon}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"bogus"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, ConfigFileAndEnvironment) {
  TempDir dir("cli-config");
  const auto env_cfg = dir / "env.json";
  const auto flag_cfg = dir / "flag.json";
  std::ofstream(env_cfg) << R"({"port": -5})";
  std::ofstream(flag_cfg) << nlohmann::json{{"lexicon", kLexicon}}.dump();

  ::setenv("AFFEKT_CONFIG", env_cfg.c_str(), 1);
  const auto from_env = invoke({"combine", "--lexicon", kLexicon, "--head", "joy", "--modifier", "trust"});
  EXPECT_EQ(from_env.code, 1);
  EXPECT_NE(from_env.err.find("port"), std::string::npos);

  const auto from_flag = invoke({"combine", "--config", flag_cfg.string(), "--head", "joy", "--modifier", "trust"});
  EXPECT_EQ(from_flag.code, 0) << from_flag.err;
  ::unsetenv("AFFEKT_CONFIG");

  std::ofstream(flag_cfg) << R"({"bogus": 1})";
  EXPECT_EQ(invoke({"combine", "--config", flag_cfg.string(), "--head", "joy", "--modifier", "trust"}).code, 1);
}
