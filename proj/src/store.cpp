#include "affekt/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "affekt/error.hpp"

namespace affekt {
namespace fs = std::filesystem;
using nlohmann::json;

// --- JSON codecs --------------------------------------------------------------

json assignment_to_json(const EmotionAssignment& a, const WheelCatalog& wheel) {
  return {{"target", a.target},
          {"targetKind", a.target_kind == TargetKind::item ? "item" : "story"},
          {"emotion", wheel.name(a.emotion)},
          {"score", a.score},
          {"matched", a.matched}};
}

EmotionAssignment assignment_from_json(const json& doc, const WheelCatalog& wheel) {
  EmotionAssignment a;
  a.target = doc.at("target").get<std::string>();
  a.target_kind = doc.at("targetKind").get<std::string>() == "story" ? TargetKind::story
                                                                     : TargetKind::item;
  a.emotion = wheel.at(doc.at("emotion").get<std::string>());
  a.score = doc.at("score").get<double>();
  a.matched = doc.at("matched").get<std::vector<std::string>>();
  return a;
}

json to_json(const PrototypeSet& set, const WheelCatalog&) {
  json basics = json::array();
  for (const auto& [_, p] : set.basics) basics.push_back(to_json(p));
  json compounds = json::array();
  for (const auto& [_, p] : set.compounds) compounds.push_back(to_json(p));
  return {{"basics", std::move(basics)}, {"compounds", std::move(compounds)}};
}

PrototypeSet prototype_set_from_json(const json& doc, const WheelCatalog& wheel) {
  PrototypeSet set;
  for (const auto& p : doc.at("basics")) {
    auto proto = prototype_from_json(p);
    set.basics.emplace(wheel.at(proto.concept_name), std::move(proto));
  }
  for (const auto& p : doc.at("compounds")) {
    auto proto = prototype_from_json(p);
    set.compounds.emplace(wheel.at(proto.concept_name), std::move(proto));
  }
  return set;
}

namespace {

json stored_item_to_json(const StoredItem& item) {
  json assignments = json::array();
  for (const auto& a : item.assignments) assignments.push_back(assignment_to_json(a));
  return {{"record", to_json(item.record)},
          {"profile", to_json(item.profile)},
          {"assignments", std::move(assignments)}};
}

StoredItem stored_item_from_json(const json& doc) {
  StoredItem item;
  item.record = item_from_json(doc.at("record"));
  item.profile = profile_from_json(doc.at("profile"));
  for (const auto& a : doc.at("assignments")) item.assignments.push_back(assignment_from_json(a));
  return item;
}

json stored_story_to_json(const StoredStory& story) {
  return {{"story", to_json(story.story)}, {"profile", to_json(story.profile)}};
}

StoredStory stored_story_from_json(const json& doc) {
  const auto& wheel = build_wheel();
  StoredStory story;
  story.story = story_from_json(doc.at("story"));
  story.profile.story_id = doc.at("profile").at("storyId").get<std::string>();
  for (const auto& [name, score] : doc.at("profile").at("emotions").items())
    story.profile.emotions[wheel.at(name)] = score.get<double>();
  return story;
}

[[noreturn]] void throw_errno(const std::string& what, const fs::path& path) {
  throw Error(ErrorKind::io, what + " " + path.string() + ": " + std::strerror(errno), path.string());
}

}  // namespace

// --- Snapshot -----------------------------------------------------------------

std::map<std::string, std::vector<EmotionAssignment>> CatalogSnapshot::item_assignments() const {
  std::map<std::string, std::vector<EmotionAssignment>> out;
  for (const auto& [id, item] : items) out.emplace(id, item->assignments);
  return out;
}

std::vector<ProfiledStory> CatalogSnapshot::profiled_stories() const {
  std::vector<ProfiledStory> out;
  for (const auto& [id, s] : stories) out.push_back({id, s->story.creator, s->profile});
  return out;
}

std::vector<std::string> CatalogSnapshot::stories_with_item(const std::string& item_id) const {
  std::vector<std::string> out;
  for (const auto& [id, s] : stories)
    if (std::any_of(s->story.items.begin(), s->story.items.end(),
                    [&](const StoryItem& i) { return i.item_id == item_id; }))
      out.push_back(id);
  return out;
}

std::vector<EmotionAssignment> CatalogSnapshot::all_assignments() const {
  std::vector<EmotionAssignment> out;
  for (const auto& [_, item] : items)
    out.insert(out.end(), item->assignments.begin(), item->assignments.end());
  for (const auto& [_, s] : stories) {
    auto lifted = story_assignments(s->profile);
    out.insert(out.end(), lifted.begin(), lifted.end());
  }
  return out;
}

bool CatalogSnapshot::same_content(const CatalogSnapshot& other) const {
  auto same_map = [](const auto& a, const auto& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) {
             return x.first == y.first && *x.second == *y.second;
           });
  };
  const bool same_protos = (!prototypes && !other.prototypes) ||
                           (prototypes && other.prototypes && *prototypes == *other.prototypes);
  return revision == other.revision && same_protos && same_map(items, other.items) &&
         same_map(stories, other.stories);
}

// --- Log files ----------------------------------------------------------------

struct CatalogStore::Log {
  fs::path path;
  int fd = -1;

  explicit Log(fs::path p) : path(std::move(p)) {}
  ~Log() {
    if (fd >= 0) ::close(fd);
  }

  // Reads complete lines and truncates an unterminated tail.
  std::vector<std::string> read_and_repair() {
    std::vector<std::string> lines;
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      const std::string content = buf.str();
      std::size_t start = 0;
      while (true) {
        const auto nl = content.find('\n', start);
        if (nl == std::string::npos) break;
        lines.push_back(content.substr(start, nl - start));
        start = nl + 1;
      }
      if (start < content.size()) {
        in.close();
        std::error_code ec;
        fs::resize_file(path, start, ec);
        if (ec) throw Error(ErrorKind::io, "cannot truncate " + path.string() + ": " + ec.message());
      }
    }
    fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd < 0) throw_errno("cannot open", path);
    return lines;
  }

  void append_line(const std::string& line) {
    std::string data = line + '\n';
    const off_t before = ::lseek(fd, 0, SEEK_END);
    const char* p = data.data();
    std::size_t left = data.size();
    while (left > 0) {
      const ssize_t n = ::write(fd, p, left);
      if (n < 0) {
        if (errno == EINTR) continue;
        const int saved = errno;
        // Drop the partial line so later appends stay well-formed.
        if (before >= 0) (void)!::ftruncate(fd, before);
        errno = saved;
        throw_errno("cannot append to", path);
      }
      p += n;
      left -= static_cast<std::size_t>(n);
    }
    if (::fsync(fd) != 0) throw_errno("cannot sync", path);
  }
};

CatalogStore::CatalogStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create store " + root_.string() + ": " + ec.message());
  items_log_ = std::make_unique<Log>(root_ / "items.jsonl");
  stories_log_ = std::make_unique<Log>(root_ / "stories.jsonl");
  prototypes_log_ = std::make_unique<Log>(root_ / "prototypes.jsonl");
  replay();
  // Make the log files' directory entries durable too.
  if (int dir = ::open(root_.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC); dir >= 0) {
    ::fsync(dir);
    ::close(dir);
  }
}

CatalogStore::~CatalogStore() = default;

void CatalogStore::replay() {
  struct Event {
    std::uint64_t rev;
    std::string type;
    json data;
  };
  std::vector<Event> events;
  for (Log* log : {items_log_.get(), stories_log_.get(), prototypes_log_.get()}) {
    const auto lines = log->read_and_repair();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      try {
        auto doc = json::parse(lines[i]);
        events.push_back({doc.at("rev").get<std::uint64_t>(), doc.at("type").get<std::string>(),
                          std::move(doc.at("data"))});
      } catch (const json::exception& e) {
        throw Error(ErrorKind::format, log->path.string() + ":" + std::to_string(i + 1) +
                                           ": corrupt event: " + e.what());
      }
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.rev < b.rev; });

  auto snap = std::make_shared<CatalogSnapshot>();
  for (auto& ev : events) {
    try {
      if (ev.type == "item") {
        auto item = std::make_shared<const StoredItem>(stored_item_from_json(ev.data));
        snap->items[item->record.id] = std::move(item);
      } else if (ev.type == "story") {
        auto story = std::make_shared<const StoredStory>(stored_story_from_json(ev.data));
        snap->stories[story->story.id] = std::move(story);
      } else if (ev.type == "prototypes") {
        snap->prototypes = std::make_shared<const PrototypeSet>(prototype_set_from_json(ev.data));
      } else {
        throw Error(ErrorKind::format, "unknown event type '" + ev.type + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::format, "event " + std::to_string(ev.rev) + ": " + e.what());
    }
    snap->revision = std::max(snap->revision, ev.rev);
  }
  publish(std::move(snap));
}

std::shared_ptr<const CatalogSnapshot> CatalogStore::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

void CatalogStore::publish(std::shared_ptr<const CatalogSnapshot> next) {
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(next);
}

void CatalogStore::append(Log& log, const std::string& type, const json& data,
                          const std::function<void(CatalogSnapshot&)>& apply) {
  auto next = std::make_shared<CatalogSnapshot>(*snapshot());
  next->revision += 1;
  apply(*next);
  log.append_line(json{{"rev", next->revision}, {"type", type}, {"data", data}}.dump());
  publish(std::move(next));
}

WriteOutcome CatalogStore::put_item(StoredItem item) {
  std::lock_guard lock(write_mutex_);
  const auto snap = snapshot();
  if (auto it = snap->items.find(item.record.id); it != snap->items.end()) {
    if (*it->second == item) return WriteOutcome::unchanged;
    throw Error(ErrorKind::conflict,
                "item '" + item.record.id + "' already exists with different content",
                item.record.id);
  }
  const json data = stored_item_to_json(item);
  auto shared = std::make_shared<const StoredItem>(std::move(item));
  append(*items_log_, "item", data,
         [&](CatalogSnapshot& s) { s.items[shared->record.id] = shared; });
  return WriteOutcome::created;
}

WriteOutcome CatalogStore::put_story(StoredStory story) {
  std::lock_guard lock(write_mutex_);
  const auto snap = snapshot();
  for (const auto& i : story.story.items)
    if (!snap->items.count(i.item_id))
      throw Error(ErrorKind::unprocessable, "unknown item '" + i.item_id + "'", i.item_id);
  if (auto it = snap->stories.find(story.story.id); it != snap->stories.end()) {
    if (*it->second == story) return WriteOutcome::unchanged;
    throw Error(ErrorKind::conflict,
                "story '" + story.story.id + "' already exists with different content",
                story.story.id);
  }
  const json data = stored_story_to_json(story);
  auto shared = std::make_shared<const StoredStory>(std::move(story));
  append(*stories_log_, "story", data,
         [&](CatalogSnapshot& s) { s.stories[shared->story.id] = shared; });
  return WriteOutcome::created;
}

WriteOutcome CatalogStore::put_prototypes(PrototypeSet prototypes) {
  std::lock_guard lock(write_mutex_);
  const auto snap = snapshot();
  if (snap->prototypes && *snap->prototypes == prototypes) return WriteOutcome::unchanged;
  const json data = to_json(prototypes);
  auto shared = std::make_shared<const PrototypeSet>(std::move(prototypes));
  append(*prototypes_log_, "prototypes", data, [&](CatalogSnapshot& s) { s.prototypes = shared; });
  return WriteOutcome::created;
}

}  // namespace affekt
