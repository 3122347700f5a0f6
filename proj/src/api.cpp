#include "affekt/api.hpp"

#include <charconv>

#include "affekt/text.hpp"

namespace affekt {
using nlohmann::json;

int http_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::contract:
    case ErrorKind::domain:
    case ErrorKind::schema:
    case ErrorKind::parse:
    case ErrorKind::format: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::conflict: return 409;
    case ErrorKind::unprocessable: return 422;
    case ErrorKind::io: return 500;
  }
  return 500;
}

ApiResponse json_response(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

ApiResponse error_response(const Error& error) {
  json body = {{"error", error.what()}, {"kind", to_string(error.kind())}};
  if (!error.field().empty()) body["field"] = error.field();
  return json_response(http_status(error.kind()), body);
}

namespace {

json assignments_json(const std::vector<EmotionAssignment>& assignments, const WheelCatalog& wheel) {
  json out = json::array();
  for (const auto& a : assignments)
    out.push_back({{"emotion", wheel.name(a.emotion)}, {"score", a.score}, {"matched", a.matched}});
  return out;
}

json item_result(const StoredItem& item, const WheelCatalog& wheel) {
  return {{"id", item.record.id}, {"emotions", assignments_json(item.assignments, wheel)}};
}

json story_result(const StoredStory& story, const WheelCatalog& wheel) {
  return {{"id", story.story.id}, {"profile", to_json(story.profile, wheel)}};
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("malformed JSON body: ") + e.what());
  }
}

}  // namespace

ApiResponse Api::post_item(const std::string& body) const {
  const auto& wheel = engine_.wheel();
  ItemRecord record = item_from_json(parse_body(body));
  const auto snap = store_.snapshot();
  if (auto existing = snap->items.find(record.id); existing != snap->items.end()) {
    if (existing->second->record != record)
      throw Error(ErrorKind::conflict, "item '" + record.id + "' already exists with different content",
                  record.id);
    return json_response(200, item_result(*existing->second, wheel));
  }
  StoredItem item;
  item.profile = engine_.profile(record);
  item.assignments = engine_.classify(item.profile);
  item.record = std::move(record);
  const json result = item_result(item, wheel);
  const auto outcome = store_.put_item(std::move(item));
  return json_response(outcome == WriteOutcome::created ? 201 : 200, result);
}

ApiResponse Api::post_story(const std::string& body) const {
  const auto& wheel = engine_.wheel();
  Story story = story_from_json(parse_body(body));
  validate_story(story, engine_.story_bounds());
  const auto snap = store_.snapshot();
  if (auto existing = snap->stories.find(story.id); existing != snap->stories.end()) {
    if (existing->second->story != story)
      throw Error(ErrorKind::conflict, "story '" + story.id + "' already exists with different content",
                  story.id);
    return json_response(200, story_result(*existing->second, wheel));
  }
  StoredStory stored;
  stored.profile = classify_story(story, snap->item_assignments());
  stored.story = std::move(story);
  const json result = story_result(stored, wheel);
  const auto outcome = store_.put_story(std::move(stored));
  return json_response(outcome == WriteOutcome::created ? 201 : 200, result);
}

ApiResponse Api::get_recommendations(const std::string& story_id,
                                     const std::map<std::string, std::string>& query) const {
  auto kind_it = query.find("kind");
  if (kind_it == query.end())
    throw Error(ErrorKind::schema, "query parameter 'kind' is required", "kind");
  const auto kind = parse_relation(kind_it->second);
  if (!kind)
    throw Error(ErrorKind::domain,
                "kind must be same, similar or opposite, got '" + kind_it->second + "'", "kind");
  std::size_t limit = kDefaultRecommendationLimit;
  if (auto it = query.find("limit"); it != query.end()) {
    const auto& text = it->second;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), limit);
    if (ec != std::errc() || ptr != text.data() + text.size() || limit == 0)
      throw Error(ErrorKind::domain, "limit must be a positive integer", "limit");
  }
  const auto rec = recommend(story_id, store_.snapshot()->profiled_stories(), *kind, limit,
                             engine_.wheel());
  return json_response(200, to_json(rec, engine_.wheel()));
}

ApiResponse Api::get_item_emotions(const std::string& item_id) const {
  const auto snap = store_.snapshot();
  auto it = snap->items.find(item_id);
  if (it == snap->items.end())
    throw Error(ErrorKind::not_found, "unknown item '" + item_id + "'", item_id);
  return json_response(200, item_result(*it->second, engine_.wheel()));
}

ApiResponse Api::get_story(const std::string& story_id) const {
  const auto snap = store_.snapshot();
  auto it = snap->stories.find(story_id);
  if (it == snap->stories.end())
    throw Error(ErrorKind::not_found, "unknown story '" + story_id + "'", story_id);
  return json_response(200, {{"story", to_json(it->second->story)},
                             {"profile", to_json(it->second->profile, engine_.wheel())}});
}

ApiResponse Api::list_stories(const std::map<std::string, std::string>& query) const {
  const auto snap = store_.snapshot();
  std::vector<std::string> ids;
  if (auto it = query.find("item"); it != query.end()) {
    ids = snap->stories_with_item(it->second);
  } else {
    for (const auto& [id, _] : snap->stories) ids.push_back(id);
  }
  json stories = json::array();
  for (const auto& id : ids) {
    const auto& s = snap->stories.at(id)->story;
    stories.push_back({{"id", s.id}, {"title", s.title}, {"creator", s.creator}});
  }
  return json_response(200, {{"stories", std::move(stories)}});
}

ApiResponse Api::get_emotions() const { return json_response(200, engine_.wheel().to_json()); }

ApiResponse Api::get_triples() const {
  return {200, "application/n-triples; charset=utf-8",
          export_assignments(store_.snapshot()->all_assignments(), engine_.wheel())};
}

ApiResponse Api::handle(const ApiRequest& request) const {
  try {
    std::vector<std::string_view> parts;
    for (auto p : split(request.path, '/'))
      if (!p.empty()) parts.push_back(p);
    const auto& m = request.method;
    const auto n = parts.size();

    if (m == "POST" && n == 1 && parts[0] == "items") return post_item(request.body);
    if (m == "POST" && n == 1 && parts[0] == "stories") return post_story(request.body);
    if (m == "GET") {
      if (n == 1 && parts[0] == "emotions") return get_emotions();
      if (n == 1 && parts[0] == "triples") return get_triples();
      if (n == 1 && parts[0] == "stories") return list_stories(request.query);
      if (n == 2 && parts[0] == "stories") return get_story(std::string(parts[1]));
      if (n == 3 && parts[0] == "stories" && parts[2] == "recommendations")
        return get_recommendations(std::string(parts[1]), request.query);
      if (n == 3 && parts[0] == "items" && parts[2] == "emotions")
        return get_item_emotions(std::string(parts[1]));
    }
    return error_response(Error(ErrorKind::not_found, "no route for " + m + " " + request.path));
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return json_response(500, {{"error", e.what()}, {"kind", "internal"}});
  }
}

}  // namespace affekt
