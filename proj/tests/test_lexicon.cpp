#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "affekt/error.hpp"
#include "affekt/lexicon.hpp"

using namespace affekt;

namespace {
EmotionId id(const char* name) { return build_wheel().at(name); }

std::vector<LexiconEntry> one_per_emotion() {
  std::vector<LexiconEntry> out;
  for (const auto& b : build_wheel().basics())
    out.push_back({"w" + std::to_string(b.sector), id(b.name.c_str()), 0.5});
  return out;
}
}  // namespace

TEST(ParseLexicon, PublishedLayoutLine) {
  std::istringstream in("outraged\tanger\t0.964\n");
  const auto r = parse_lexicon(in);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0], (LexiconEntry{"outraged", id("Anger"), 0.964}));
  EXPECT_EQ(r.skipped, 0u);
}

TEST(ParseLexicon, EmptyStream) {
  std::istringstream in("");
  const auto r = parse_lexicon(in);
  EXPECT_TRUE(r.entries.empty());
  EXPECT_EQ(r.skipped, 0u);
}

TEST(ParseLexicon, SkipsUnknownEmotionAndMalformed) {
  std::istringstream in(
      "x\tserenity\t0.5\n"
      "happy\tjoy\t0.8\n"
      "sad\tsadness\t0.7\n"
      "\n"
      "bad line\n"
      "calm\ttrust\t0.6\n"
      "love\tlove\t0.9\n"
      "big\tfear\t1.7\n"
      "Hope\tanticipation\t0.5\n");
  const auto r = parse_lexicon(in);
  EXPECT_EQ(r.skipped, 4u);
  ASSERT_EQ(r.entries.size(), 4u);
  EXPECT_EQ(r.entries.back().term, "hope");
}

TEST(ParseLexicon, MostlyMalformedIsFormatError) {
  std::istringstream in("a,b,c\nd,e,f\ngood\tjoy\t0.5\n");
  try {
    parse_lexicon(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::format);
  }
}

TEST(ParseLexicon, MissingFileIsIoError) {
  try {
    load_lexicon("/nonexistent/lexicon.tsv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(IntensityToDegree, Examples) {
  EXPECT_DOUBLE_EQ(intensity_to_degree(1.0), 1.0);
  EXPECT_DOUBLE_EQ(intensity_to_degree(0.5), 0.75);
  EXPECT_LT(intensity_to_degree(0.2), intensity_to_degree(0.3));
  EXPECT_GT(intensity_to_degree(1e-9), 0.5);
  EXPECT_THROW(intensity_to_degree(0.0), Error);
  EXPECT_THROW(intensity_to_degree(1.2), Error);
}

TEST(BuildBasicPrototypes, TopOne) {
  auto entries = one_per_emotion();
  entries.push_back({"a", id("Joy"), 0.9});
  entries.push_back({"b", id("Joy"), 0.8});
  const auto protos = build_basic_prototypes(entries, 1);
  EXPECT_EQ(protos.at(id("Joy")).typical, (std::vector<TermDegree>{{"a", 0.95}}));
}

TEST(BuildBasicPrototypes, KLargerThanEntries) {
  const auto protos = build_basic_prototypes(one_per_emotion(), 50);
  for (const auto& [e, p] : protos) EXPECT_EQ(p.typical.size(), 1u);
}

TEST(BuildBasicPrototypes, TieBreaksByTerm) {
  auto entries = one_per_emotion();
  entries.push_back({"y", id("Fear"), 0.7});
  entries.push_back({"x", id("Fear"), 0.7});
  const auto protos = build_basic_prototypes(entries, 1);
  EXPECT_EQ(protos.at(id("Fear")).typical[0].term, "x");
}

TEST(BuildBasicPrototypes, DuplicateTermKeepsMaxIntensity) {
  auto entries = one_per_emotion();
  entries.push_back({"dup", id("Joy"), 0.6});
  entries.push_back({"dup", id("Joy"), 0.9});
  const auto protos = build_basic_prototypes(entries, 5);
  const auto& t = protos.at(id("Joy")).typical;
  ASSERT_EQ(std::count_if(t.begin(), t.end(), [](const auto& x) { return x.term == "dup"; }), 1);
  EXPECT_EQ(t[0], (TermDegree{"dup", 0.95}));
}

TEST(BuildBasicPrototypes, Errors) {
  EXPECT_THROW(build_basic_prototypes(one_per_emotion(), 0), Error);
  std::vector<LexiconEntry> only_joy = {{"a", id("Joy"), 0.5}};
  try {
    build_basic_prototypes(only_joy, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unprocessable);
    const std::string msg = e.what();
    for (const char* n : {"Trust", "Fear", "Surprise", "Sadness", "Disgust", "Anger", "Anticipation"})
      EXPECT_NE(msg.find(n), std::string::npos) << n;
    EXPECT_EQ(msg.find("Joy"), std::string::npos);
  }
}

TEST(BuildBasicPrototypes, RandomInvariantsAndPermutationInvariance) {
  std::mt19937 rng(11);
  const auto& wheel = build_wheel();
  for (int trial = 0; trial < 100; ++trial) {
    auto entries = one_per_emotion();
    const int n = std::uniform_int_distribution<int>(0, 80)(rng);
    for (int i = 0; i < n; ++i) {
      const auto e = EmotionId{static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 7)(rng))};
      const double t = std::uniform_int_distribution<int>(1, 20)(rng) / 20.0;
      entries.push_back({"t" + std::to_string(std::uniform_int_distribution<int>(0, 15)(rng)), e, t});
    }
    const int k = std::uniform_int_distribution<int>(1, 12)(rng);
    const auto protos = build_basic_prototypes(entries, k);
    ASSERT_EQ(protos.size(), 8u);
    for (const auto& [e, p] : protos) {
      EXPECT_LE(static_cast<int>(p.typical.size()), k);
      std::set<std::string> seen;
      for (std::size_t i = 0; i < p.typical.size(); ++i) {
        EXPECT_GT(p.typical[i].degree, 0.5);
        EXPECT_LE(p.typical[i].degree, 1.0);
        EXPECT_TRUE(seen.insert(p.typical[i].term).second);
        if (i > 0) {
          const auto& a = p.typical[i - 1];
          const auto& b = p.typical[i];
          EXPECT_TRUE(a.degree > b.degree || (a.degree == b.degree && a.term < b.term));
        }
      }
      // Round trip through prototype/1.
      const auto proto = p.to_prototype(wheel);
      EXPECT_EQ(BasicPrototype::from_prototype(prototype_from_json(to_json(proto)), wheel), p);
    }
    std::shuffle(entries.begin(), entries.end(), rng);
    EXPECT_EQ(build_basic_prototypes(entries, k), protos);
  }
}

TEST(BuildBasicPrototypes, ToPrototypesNamesEmotions) {
  const auto protos = to_prototypes(build_basic_prototypes(one_per_emotion(), 3));
  EXPECT_EQ(protos.at(id("Anger")).concept_name, "Anger");
  EXPECT_FALSE(protos.at(id("Anger")).combined());
}
