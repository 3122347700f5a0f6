#pragma once

// Ties the pipeline together: lexicon -> basic prototypes -> compound
// prototypes, and item text -> profile -> emotion assignments.

#include <map>
#include <string>
#include <vector>

#include "affekt/classify.hpp"
#include "affekt/config.hpp"
#include "affekt/items.hpp"
#include "affekt/lexicon.hpp"
#include "affekt/tcl.hpp"
#include "affekt/wheel.hpp"

namespace affekt {

struct PrototypeSet {
  std::map<EmotionId, Prototype> basics;
  std::map<EmotionId, CombinedPrototype> compounds;

  friend bool operator==(const PrototypeSet&, const PrototypeSet&) = default;
};

PrototypeSet build_prototypes(const std::vector<LexiconEntry>& entries, int top_k,
                              const HeadRule& head_rule = {},
                              const WheelCatalog& wheel = build_wheel());

class Engine {
 public:
  Engine(PrototypeSet prototypes, const ServiceConfig& config,
         TranslationMap translation = {}, const WheelCatalog& wheel = build_wheel());

  const WheelCatalog& wheel() const noexcept { return *wheel_; }
  const PrototypeSet& prototypes() const noexcept { return prototypes_; }
  // The prototypes items are classified against.
  const std::map<EmotionId, Prototype>& targets() const noexcept { return targets_; }
  const StoryBounds& story_bounds() const noexcept { return bounds_; }

  ItemProfile profile(const ItemRecord& item) const { return pipeline_.profile(item); }
  std::vector<EmotionAssignment> classify(const ItemProfile& profile) const;

 private:
  const WheelCatalog* wheel_;
  PrototypeSet prototypes_;
  std::map<EmotionId, Prototype> targets_;
  TextPipeline pipeline_;
  TranslationMap translation_;
  double threshold_ = kDefaultThreshold;
  StoryBounds bounds_;
};

}  // namespace affekt
