#include "affekt/engine.hpp"

namespace affekt {

PrototypeSet build_prototypes(const std::vector<LexiconEntry>& entries, int top_k,
                              const HeadRule& head_rule, const WheelCatalog& wheel) {
  PrototypeSet set;
  set.basics = to_prototypes(build_basic_prototypes(entries, top_k, wheel), wheel);
  set.compounds = generate_compound_prototypes(wheel, set.basics, head_rule);
  return set;
}

Engine::Engine(PrototypeSet prototypes, const ServiceConfig& config, TranslationMap translation,
               const WheelCatalog& wheel)
    : wheel_(&wheel),
      prototypes_(std::move(prototypes)),
      translation_(std::move(translation)),
      bounds_(config.story_bounds) {
  config.validate();
  targets_ = prototypes_.compounds;
  if (config.classify_basics) targets_.insert(prototypes_.basics.begin(), prototypes_.basics.end());
  pipeline_.language = config.language;
  threshold_ = config.threshold;
}

std::vector<EmotionAssignment> Engine::classify(const ItemProfile& profile) const {
  ClassifyOptions options;
  options.threshold = threshold_;
  options.translation = translation_.empty() ? nullptr : &translation_;
  return classify_item(profile, targets_, options);
}

}  // namespace affekt
