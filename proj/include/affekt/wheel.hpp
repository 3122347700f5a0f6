#pragma once

// Plutchik wheel: eight basic emotions on a circle plus the 24 dyads formed
// by non-opposite pairs. Positions are kept in half-sector units so that
// tertiary dyads (odd arc length) stay integral.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace affekt {

inline constexpr int kBasicCount = 8;
inline constexpr int kDyadCount = 24;
inline constexpr int kEmotionCount = kBasicCount + kDyadCount;
inline constexpr int kHalfSectors = 2 * kBasicCount;

// Index into the wheel catalog: 0..7 are basics in sector order, 8..31 dyads.
struct EmotionId {
  std::uint8_t value = 0;

  constexpr bool is_basic() const noexcept { return value < kBasicCount; }
  friend constexpr auto operator<=>(EmotionId, EmotionId) = default;
};

enum class DyadKind { primary = 1, secondary = 2, tertiary = 3 };

enum class EmotionRelation { same, similar, opposite, none };

const char* to_string(DyadKind kind) noexcept;
const char* to_string(EmotionRelation relation) noexcept;
std::optional<EmotionRelation> parse_relation(std::string_view text);

struct BasicEmotion {
  std::string name;
  int sector = 0;
};

struct CompoundEmotion {
  std::string name;
  // Basic ids; components[0] sits at the start of the shorter arc.
  std::array<EmotionId, 2> components;
  DyadKind kind = DyadKind::primary;
  int position_halves = 0;

  double position() const noexcept { return position_halves / 2.0; }
};

class WheelCatalog {
 public:
  WheelCatalog();

  const std::vector<BasicEmotion>& basics() const noexcept { return basics_; }
  const std::vector<CompoundEmotion>& dyads() const noexcept { return dyads_; }

  std::vector<EmotionId> all_ids() const;
  std::vector<EmotionId> dyad_ids() const;

  const std::string& name(EmotionId id) const;
  // Case-insensitive lookup.
  std::optional<EmotionId> find(std::string_view name) const;
  // Like find() but throws Error(not_found) naming the emotion.
  EmotionId at(std::string_view name) const;

  const CompoundEmotion& dyad(EmotionId id) const;
  std::optional<EmotionId> dyad_of(EmotionId a, EmotionId b) const;

  int sector(EmotionId basic) const;
  int position_halves(EmotionId id) const;

  int radial_distance(EmotionId a, EmotionId b) const;
  EmotionId opposite_of(EmotionId id) const;
  EmotionRelation relation(EmotionId a, EmotionId b) const;

  // wheel/1 document.
  nlohmann::json to_json() const;

 private:
  std::vector<BasicEmotion> basics_;
  std::vector<CompoundEmotion> dyads_;
};

// Shared immutable catalog; construction is deterministic.
const WheelCatalog& build_wheel();

// Circular distance between two half-sector positions, in half-sectors (0..8).
int angular_distance_halves(int a, int b) noexcept;

}  // namespace affekt

template <>
struct std::hash<affekt::EmotionId> {
  std::size_t operator()(affekt::EmotionId id) const noexcept { return id.value; }
};
