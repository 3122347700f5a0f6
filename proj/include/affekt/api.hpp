#pragma once

// HTTP surface of the catalog service, kept independent of the transport so
// request handling can be exercised directly.
//
//   POST /items                         item/1 body -> {id, emotions}
//   POST /stories                       story/1 body -> {id, profile}
//   GET  /items/{id}/emotions
//   GET  /stories/{id}
//   GET  /stories?item={itemId}
//   GET  /stories/{id}/recommendations?kind=same|similar|opposite&limit=N
//   GET  /emotions                      wheel/1
//   GET  /triples                       triples/1 (N-Triples)

#include <map>
#include <string>

#include <json.hpp>

#include "affekt/engine.hpp"
#include "affekt/error.hpp"
#include "affekt/store.hpp"

namespace affekt {

inline constexpr std::size_t kDefaultRecommendationLimit = 5;

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;

  nlohmann::json json() const { return nlohmann::json::parse(body); }
};

int http_status(ErrorKind kind) noexcept;

class Api {
 public:
  Api(CatalogStore& store, const Engine& engine) : store_(store), engine_(engine) {}

  ApiResponse handle(const ApiRequest& request) const;

  ApiResponse post_item(const std::string& body) const;
  ApiResponse post_story(const std::string& body) const;
  ApiResponse get_recommendations(const std::string& story_id,
                                  const std::map<std::string, std::string>& query) const;
  ApiResponse get_item_emotions(const std::string& item_id) const;
  ApiResponse get_story(const std::string& story_id) const;
  ApiResponse list_stories(const std::map<std::string, std::string>& query) const;
  ApiResponse get_emotions() const;
  ApiResponse get_triples() const;

 private:
  CatalogStore& store_;
  const Engine& engine_;
};

ApiResponse json_response(int status, const nlohmann::json& body);
ApiResponse error_response(const Error& error);

// Blocks serving the Api over HTTP until stop() is called from another thread.
class HttpServer {
 public:
  explicit HttpServer(const Api& api);
  ~HttpServer();

  // Binds host:port (port 0 picks a free one) and returns the bound port.
  // Throws Error(io) when binding fails.
  int bind(const std::string& host, int port);
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace affekt
