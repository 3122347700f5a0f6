#pragma once

// Emotion-intensity lexicon ingestion and basic-emotion prototypes.

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "affekt/tcl.hpp"
#include "affekt/wheel.hpp"

namespace affekt {

inline constexpr int kDefaultTopK = 10;

struct LexiconEntry {
  std::string term;
  EmotionId emotion;
  double intensity = 0;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct LexiconParseResult {
  std::vector<LexiconEntry> entries;
  std::size_t skipped = 0;
};

// Tab-separated `term<TAB>emotion<TAB>intensity`. Malformed lines and lines
// naming a non-basic emotion are skipped and counted. Throws Error(io) on a
// stream failure and Error(format) when more than half of the non-blank lines
// are skipped.
LexiconParseResult parse_lexicon(std::istream& in, const WheelCatalog& wheel = build_wheel());
LexiconParseResult load_lexicon(const std::string& path, const WheelCatalog& wheel = build_wheel());

// (0,1] -> (0.5,1], t -> 0.5 + t/2.
double intensity_to_degree(double intensity);

struct TermDegree {
  std::string term;
  double degree;

  friend bool operator==(const TermDegree&, const TermDegree&) = default;
};

struct BasicPrototype {
  EmotionId emotion;
  // Degree descending, ties by term ascending.
  std::vector<TermDegree> typical;
  std::vector<PropertyLiteral> rigid;

  Prototype to_prototype(const WheelCatalog& wheel = build_wheel()) const;
  static BasicPrototype from_prototype(const Prototype& p,
                                       const WheelCatalog& wheel = build_wheel());

  friend bool operator==(const BasicPrototype&, const BasicPrototype&) = default;
};

// Keeps the k most intense terms per basic emotion. Throws Error(contract)
// for k < 1 and Error(unprocessable) listing every basic emotion without
// entries.
std::map<EmotionId, BasicPrototype> build_basic_prototypes(
    const std::vector<LexiconEntry>& entries, int k = kDefaultTopK,
    const WheelCatalog& wheel = build_wheel());

std::map<EmotionId, Prototype> to_prototypes(const std::map<EmotionId, BasicPrototype>& basics,
                                             const WheelCatalog& wheel = build_wheel());

}  // namespace affekt
