#pragma once

// Persistent catalog: items with their profiles and assignments, stories
// with their emotion profiles, and the prototype set. Every write appends
// one newline-terminated JSON event to the log of its entity type and is
// fsync'ed before it is published; startup replays the logs in revision
// order. A trailing line without its newline (a write interrupted before it
// was acknowledged) is discarded and cut from the file.
//
// One writer at a time; readers take immutable snapshots.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "affekt/classify.hpp"
#include "affekt/engine.hpp"
#include "affekt/items.hpp"

namespace affekt {

struct StoredItem {
  ItemRecord record;
  ItemProfile profile;
  std::vector<EmotionAssignment> assignments;

  friend bool operator==(const StoredItem&, const StoredItem&) = default;
};

struct StoredStory {
  Story story;
  StoryEmotionProfile profile;

  friend bool operator==(const StoredStory&, const StoredStory&) = default;
};

struct CatalogSnapshot {
  std::uint64_t revision = 0;
  std::map<std::string, std::shared_ptr<const StoredItem>> items;
  std::map<std::string, std::shared_ptr<const StoredStory>> stories;
  std::shared_ptr<const PrototypeSet> prototypes;

  std::map<std::string, std::vector<EmotionAssignment>> item_assignments() const;
  std::vector<ProfiledStory> profiled_stories() const;
  // Story ids containing the item, ascending.
  std::vector<std::string> stories_with_item(const std::string& item_id) const;
  // Item and story assertions.
  std::vector<EmotionAssignment> all_assignments() const;

  // Structural equality of catalog content (revision included).
  bool same_content(const CatalogSnapshot& other) const;
};

enum class WriteOutcome { created, unchanged };

class CatalogStore {
 public:
  // Creates the directory if needed and replays its logs. Throws Error(io)
  // on filesystem failures and Error(format) on a corrupt non-tail line.
  explicit CatalogStore(std::filesystem::path root);
  ~CatalogStore();

  CatalogStore(const CatalogStore&) = delete;
  CatalogStore& operator=(const CatalogStore&) = delete;

  const std::filesystem::path& root() const noexcept { return root_; }
  std::shared_ptr<const CatalogSnapshot> snapshot() const;

  // Identical re-puts are no-ops; a different value under an existing id
  // throws Error(conflict). Stories must reference stored items
  // (Error(unprocessable) naming the id).
  WriteOutcome put_item(StoredItem item);
  WriteOutcome put_story(StoredStory story);
  WriteOutcome put_prototypes(PrototypeSet prototypes);

 private:
  struct Log;

  void replay();
  void append(Log& log, const std::string& type, const nlohmann::json& data,
              const std::function<void(CatalogSnapshot&)>& apply);
  void publish(std::shared_ptr<const CatalogSnapshot> next);

  std::filesystem::path root_;
  std::unique_ptr<Log> items_log_;
  std::unique_ptr<Log> stories_log_;
  std::unique_ptr<Log> prototypes_log_;

  std::mutex write_mutex_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const CatalogSnapshot> current_;
};

// JSON codecs used by the event log and the HTTP layer.
nlohmann::json assignment_to_json(const EmotionAssignment& a, const WheelCatalog& wheel = build_wheel());
EmotionAssignment assignment_from_json(const nlohmann::json& doc,
                                       const WheelCatalog& wheel = build_wheel());
nlohmann::json to_json(const PrototypeSet& set, const WheelCatalog& wheel = build_wheel());
PrototypeSet prototype_set_from_json(const nlohmann::json& doc,
                                     const WheelCatalog& wheel = build_wheel());

}  // namespace affekt
