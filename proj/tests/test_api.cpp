#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "affekt/api.hpp"
#include "affekt/error.hpp"
#include "support/fixtures.hpp"

using namespace affekt;
using nlohmann::json;
using testing_support::TempDir;

namespace {

class ApiTest : public ::testing::Test {
 protected:
  ApiTest()
      : dir_("api"),
        store_(dir_.path()),
        engine_(testing_support::fixture_prototypes(), ServiceConfig{}),
        api_(store_, engine_) {}

  ApiResponse post(const std::string& path, const std::string& body) {
    return api_.handle({"POST", path, {}, body});
  }
  ApiResponse get(const std::string& path, std::map<std::string, std::string> query = {}) {
    return api_.handle({"GET", path, std::move(query), ""});
  }
  std::string item(const std::string& id) {
    return testing_support::slurp(testing_support::fixture("items/" + id + ".json"));
  }
  void load_fixture_catalog() {
    for (const auto& entry : std::filesystem::directory_iterator(testing_support::fixture("items")))
      ASSERT_EQ(post("/items", testing_support::slurp(entry.path())).status, 201);
    for (const auto& s : load_stories(testing_support::fixture("stories.jsonl").string()))
      ASSERT_EQ(post("/stories", to_json(s).dump()).status, 201) << s.id;
  }

  TempDir dir_;
  CatalogStore store_;
  Engine engine_;
  Api api_;
};

}  // namespace

TEST_F(ApiTest, PostItemCreatesThenIsIdempotent) {
  const auto first = post("/items", item("gufo-1"));
  ASSERT_EQ(first.status, 201) << first.body;
  const auto doc = first.json();
  EXPECT_EQ(doc.at("id"), "gufo-1");
  ASSERT_FALSE(doc.at("emotions").empty());
  EXPECT_EQ(doc.at("emotions")[0].at("emotion"), "Curiosity");

  const auto second = post("/items", item("gufo-1"));
  EXPECT_EQ(second.status, 200);
  EXPECT_EQ(second.body, first.body);
  EXPECT_EQ(store_.snapshot()->items.size(), 1u);
  EXPECT_EQ(store_.snapshot()->revision, 1u);
}

TEST_F(ApiTest, PostItemErrors) {
  auto r = post("/items", R"({"title":"x"})");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.json().at("field"), "id");
  EXPECT_EQ(post("/items", "{oops").status, 400);

  r = post("/items", R"({"id":"e","description":"the of 1874"})");
  EXPECT_EQ(r.status, 422);
  EXPECT_NE(r.json().at("error").get<std::string>().find("no lexical content"), std::string::npos);

  ASSERT_EQ(post("/items", R"({"id":"c","description":"calm sea"})").status, 201);
  EXPECT_EQ(post("/items", R"({"id":"c","description":"rough sea"})").status, 409);
}

TEST_F(ApiTest, PostStoryRules) {
  for (auto id : {"lovers-2", "feast-3", "harbour-4", "39138"}) ASSERT_EQ(post("/items", item(id)).status, 201);
  const json ann = {{"emojis", {"love"}}};
  auto story = [&](std::vector<std::string> ids) {
    json items = json::array();
    for (const auto& i : ids) {
      json entry = ann;
      entry["itemId"] = i;
      items.push_back(entry);
    }
    return json{{"id", "S"}, {"title", "t"}, {"creator", "c"}, {"items", items}}.dump();
  };
  const auto ok = post("/stories", story({"lovers-2", "feast-3", "harbour-4"}));
  ASSERT_EQ(ok.status, 201) << ok.body;
  EXPECT_TRUE(ok.json().at("profile").at("emotions").contains("Love"));

  EXPECT_EQ(post("/stories", story({"lovers-2", "feast-3", "harbour-4", "39138"})).status, 400);
  auto ghost = json::parse(story({"ghost"}));
  ghost["id"] = "G";
  const auto unknown = post("/stories", ghost.dump());
  EXPECT_EQ(unknown.status, 422);
  EXPECT_EQ(unknown.json().at("field"), "ghost");

  const auto bare = post("/stories", R"({"id":"B","title":"t","creator":"c","items":[{"itemId":"39138"}]})");
  EXPECT_EQ(bare.status, 400);
  EXPECT_NE(bare.body.find("annotation required"), std::string::npos);
  EXPECT_EQ(post("/stories", story({"lovers-2", "feast-3", "harbour-4"})).status, 200);
  EXPECT_EQ(post("/stories", story({"lovers-2"})).status, 409);
}

TEST_F(ApiTest, RecommendationsOnFixtureCatalog) {
  load_fixture_catalog();
  const auto sim = get("/stories/S2/recommendations", {{"kind", "similar"}});
  ASSERT_EQ(sim.status, 200) << sim.body;
  bool pride = false;
  const auto entries = sim.json().at("entries");
  for (const auto& e : entries) {
    EXPECT_EQ(build_wheel().relation(build_wheel().at(e.at("sourceEmotion").get<std::string>()),
                                     build_wheel().at(e.at("targetEmotion").get<std::string>())),
              EmotionRelation::similar);
    if (e.at("storyId") == "S3") {
      pride = true;
      EXPECT_EQ(e.at("sourceEmotion"), "Hope");
      EXPECT_EQ(e.at("targetEmotion"), "Pride");
    }
  }
  EXPECT_TRUE(pride) << sim.body;

  const auto opp = get("/stories/S1/recommendations", {{"kind", "opposite"}});
  ASSERT_EQ(opp.status, 200);
  ASSERT_FALSE(opp.json().at("entries").empty());
  EXPECT_EQ(opp.json().at("entries")[0].at("storyId"), "S4");
  EXPECT_EQ(opp.json().at("entries")[0].at("targetEmotion"), "Remorse");

  EXPECT_EQ(get("/stories/S1/recommendations", {{"kind", "inverse"}}).status, 400);
  EXPECT_EQ(get("/stories/S1/recommendations").status, 400);
  EXPECT_EQ(get("/stories/S1/recommendations", {{"kind", "same"}, {"limit", "0"}}).status, 400);
  EXPECT_EQ(get("/stories/S1/recommendations", {{"kind", "same"}, {"limit", "x"}}).status, 400);
  EXPECT_EQ(get("/stories/NOPE/recommendations", {{"kind", "same"}}).status, 404);
  const auto limited = get("/stories/S2/recommendations", {{"kind", "similar"}, {"limit", "1"}});
  EXPECT_EQ(limited.json().at("entries").size(), 1u);
}

TEST_F(ApiTest, EmptyProfileIsUnprocessable) {
  ASSERT_EQ(post("/items", R"({"id":"plain","description":"a wooden chair"})").status, 201);
  ASSERT_EQ(post("/stories", R"({"id":"E","title":"t","creator":"c","items":[{"itemId":"plain","tags":["wood"]}]})")
                .status,
            201);
  EXPECT_EQ(get("/stories/E/recommendations", {{"kind", "same"}}).status, 422);
}

TEST_F(ApiTest, ReadEndpoints) {
  load_fixture_catalog();
  const auto emotions = get("/items/39138/emotions");
  ASSERT_EQ(emotions.status, 200);
  EXPECT_EQ(emotions.json().at("emotions").size(), 2u);
  EXPECT_EQ(get("/items/nope/emotions").status, 404);

  const auto story = get("/stories/S4");
  ASSERT_EQ(story.status, 200);
  EXPECT_EQ(story.json().at("story").at("title"), "Wrecks and fires");
  EXPECT_EQ(get("/stories/S9").status, 404);

  const auto by_item = get("/stories", {{"item", "39138"}});
  ASSERT_EQ(by_item.status, 200);
  EXPECT_EQ(by_item.json().at("stories").size(), 2u);
  EXPECT_EQ(get("/stories").json().at("stories").size(), 6u);

  EXPECT_EQ(get("/emotions").json().at("schema"), "wheel/1");
  const auto triples = get("/triples");
  EXPECT_EQ(triples.status, 200);
  EXPECT_EQ(triples.content_type.rfind("application/n-triples", 0), 0u);
  EXPECT_EQ(triples.body, export_assignments(store_.snapshot()->all_assignments()));
  EXPECT_EQ(get("/nowhere").status, 404);
  EXPECT_EQ(api_.handle({"DELETE", "/items", {}, ""}).status, 404);
}

TEST_F(ApiTest, ResponsesArePureFunctionsOfRevision) {
  load_fixture_catalog();
  const auto a = get("/stories/S2/recommendations", {{"kind", "similar"}}).body;
  const auto t = get("/triples").body;
  CatalogStore replayed(dir_.path());
  Engine engine(testing_support::fixture_prototypes(), ServiceConfig{});
  Api api(replayed, engine);
  EXPECT_EQ(api.handle({"GET", "/stories/S2/recommendations", {{"kind", "similar"}}, ""}).body, a);
  EXPECT_EQ(api.handle({"GET", "/triples", {}, ""}).body, t);
}

TEST_F(ApiTest, HttpRoundTrip) {
  HttpServer server(api_);
  const int port = server.bind("127.0.0.1", 0);
  std::thread loop([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  for (int i = 0; i < 50 && !client.Get("/emotions"); ++i)
    std::this_thread::sleep_for(std::chrono::milliseconds(10));

  auto res = client.Post("/items", item("gufo-1"), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201);
  res = client.Get("/items/gufo-1/emotions");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body).at("emotions")[0].at("emotion"), "Curiosity");
  res = client.Get("/stories/x/recommendations?kind=inverse");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  res = client.Get("/stories/x/recommendations?kind=same");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  res = client.Post("/items", R"({"title":"x"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body).at("field"), "id");

  server.stop();
  loop.join();
}

TEST(HttpServer, BindFailureNamesPort) {
  TempDir dir("api-bind");
  CatalogStore store(dir.path());
  Engine engine(testing_support::fixture_prototypes(), ServiceConfig{});
  Api api(store, engine);
  HttpServer first(api);
  const int port = first.bind("127.0.0.1", 0);
  HttpServer second(api);
  try {
    second.bind("127.0.0.1", port);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
    EXPECT_EQ(e.field(), "port");
  }
}
