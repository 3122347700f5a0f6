#include "affekt/wheel.hpp"

#include <algorithm>
#include <cstdlib>

#include "affekt/error.hpp"
#include "affekt/text.hpp"

namespace affekt {
namespace {

constexpr std::array<const char*, kBasicCount> kBasicNames = {
    "Joy", "Trust", "Fear", "Surprise", "Sadness", "Disgust", "Anger", "Anticipation"};

// Row d-1 holds the dyad starting at sector s and spanning d sectors clockwise.
constexpr std::array<std::array<const char*, kBasicCount>, 3> kDyadNames = {{
    {"Love", "Submission", "Awe", "Disapproval", "Remorse", "Contempt", "Aggressiveness",
     "Optimism"},
    {"Guilt", "Curiosity", "Despair", "Unbelief", "Envy", "Cynicism", "Pride", "Hope"},
    {"Delight", "Sentimentality", "Shame", "Outrage", "Pessimism", "Morbidness", "Dominance",
     "Anxiety"},
}};

constexpr EmotionId dyad_id(int distance, int start) {
  return EmotionId{static_cast<std::uint8_t>(kBasicCount + (distance - 1) * kBasicCount + start)};
}

}  // namespace

const char* to_string(DyadKind kind) noexcept {
  switch (kind) {
    case DyadKind::primary: return "primary";
    case DyadKind::secondary: return "secondary";
    case DyadKind::tertiary: return "tertiary";
  }
  return "?";
}

const char* to_string(EmotionRelation relation) noexcept {
  switch (relation) {
    case EmotionRelation::same: return "same";
    case EmotionRelation::similar: return "similar";
    case EmotionRelation::opposite: return "opposite";
    case EmotionRelation::none: return "none";
  }
  return "?";
}

std::optional<EmotionRelation> parse_relation(std::string_view text) {
  if (text == "same") return EmotionRelation::same;
  if (text == "similar") return EmotionRelation::similar;
  if (text == "opposite") return EmotionRelation::opposite;
  return std::nullopt;
}

int angular_distance_halves(int a, int b) noexcept {
  int diff = std::abs(a - b) % kHalfSectors;
  return std::min(diff, kHalfSectors - diff);
}

WheelCatalog::WheelCatalog() {
  basics_.reserve(kBasicCount);
  for (int s = 0; s < kBasicCount; ++s) basics_.push_back({kBasicNames[s], s});

  dyads_.reserve(kDyadCount);
  for (int d = 1; d <= 3; ++d) {
    for (int s = 0; s < kBasicCount; ++s) {
      CompoundEmotion dyad;
      dyad.name = kDyadNames[d - 1][s];
      dyad.components = {EmotionId{static_cast<std::uint8_t>(s)},
                         EmotionId{static_cast<std::uint8_t>((s + d) % kBasicCount)}};
      dyad.kind = static_cast<DyadKind>(d);
      dyad.position_halves = (2 * s + d) % kHalfSectors;
      dyads_.push_back(std::move(dyad));
    }
  }
}

std::vector<EmotionId> WheelCatalog::all_ids() const {
  std::vector<EmotionId> ids;
  for (int i = 0; i < kEmotionCount; ++i) ids.push_back(EmotionId{static_cast<std::uint8_t>(i)});
  return ids;
}

std::vector<EmotionId> WheelCatalog::dyad_ids() const {
  std::vector<EmotionId> ids;
  for (int i = kBasicCount; i < kEmotionCount; ++i)
    ids.push_back(EmotionId{static_cast<std::uint8_t>(i)});
  return ids;
}

const std::string& WheelCatalog::name(EmotionId id) const {
  if (id.is_basic()) return basics_.at(id.value).name;
  return dyad(id).name;
}

std::optional<EmotionId> WheelCatalog::find(std::string_view name) const {
  const std::string key = to_lower(name);
  for (int i = 0; i < kEmotionCount; ++i) {
    EmotionId id{static_cast<std::uint8_t>(i)};
    if (to_lower(this->name(id)) == key) return id;
  }
  return std::nullopt;
}

EmotionId WheelCatalog::at(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorKind::not_found, "unknown emotion '" + std::string(name) + "'",
              std::string(name));
}

const CompoundEmotion& WheelCatalog::dyad(EmotionId id) const {
  if (id.is_basic() || id.value >= kEmotionCount)
    throw Error(ErrorKind::contract, "emotion id " + std::to_string(id.value) + " is not a dyad");
  return dyads_[id.value - kBasicCount];
}

std::optional<EmotionId> WheelCatalog::dyad_of(EmotionId a, EmotionId b) const {
  if (!a.is_basic() || !b.is_basic()) return std::nullopt;
  const int fwd = (b.value - a.value + kBasicCount) % kBasicCount;
  if (fwd >= 1 && fwd <= 3) return dyad_id(fwd, a.value);
  const int back = kBasicCount - fwd;
  if (back >= 1 && back <= 3) return dyad_id(back, b.value);
  return std::nullopt;
}

int WheelCatalog::sector(EmotionId basic) const {
  if (!basic.is_basic())
    throw Error(ErrorKind::contract, name(basic) + " is not a basic emotion");
  return basics_[basic.value].sector;
}

int WheelCatalog::position_halves(EmotionId id) const {
  return id.is_basic() ? 2 * sector(id) : dyad(id).position_halves;
}

int WheelCatalog::radial_distance(EmotionId a, EmotionId b) const {
  int diff = std::abs(sector(a) - sector(b));
  return std::min(diff, kBasicCount - diff);
}

EmotionId WheelCatalog::opposite_of(EmotionId id) const {
  if (id.is_basic()) return EmotionId{static_cast<std::uint8_t>((id.value + 4) % kBasicCount)};
  const auto& d = dyad(id);
  return *dyad_of(opposite_of(d.components[0]), opposite_of(d.components[1]));
}

EmotionRelation WheelCatalog::relation(EmotionId a, EmotionId b) const {
  if (a == b) return EmotionRelation::same;
  if (opposite_of(a) == b) return EmotionRelation::opposite;
  if (angular_distance_halves(position_halves(a), position_halves(b)) <= 2)
    return EmotionRelation::similar;
  return EmotionRelation::none;
}

nlohmann::json WheelCatalog::to_json() const {
  nlohmann::json basics = nlohmann::json::array();
  for (const auto& b : basics_) basics.push_back({{"name", b.name}, {"sector", b.sector}});
  nlohmann::json dyads = nlohmann::json::array();
  for (const auto& d : dyads_) {
    dyads.push_back({{"name", d.name},
                     {"components", {name(d.components[0]), name(d.components[1])}},
                     {"kind", to_string(d.kind)},
                     {"position", d.position()}});
  }
  return {{"schema", "wheel/1"}, {"basics", std::move(basics)}, {"dyads", std::move(dyads)}};
}

const WheelCatalog& build_wheel() {
  static const WheelCatalog catalog;
  return catalog;
}

}  // namespace affekt
