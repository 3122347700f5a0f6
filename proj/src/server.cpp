#include <httplib.h>

#include "affekt/api.hpp"

namespace affekt {

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const Api& api) : impl_(std::make_unique<Impl>()) {
  auto forward = [&api](const char* method) {
    return [&api, method](const httplib::Request& req, httplib::Response& res) {
      ApiRequest request{method, req.path, {}, req.body};
      for (const auto& [key, value] : req.params) request.query.emplace(key, value);
      const ApiResponse response = api.handle(request);
      res.status = response.status;
      res.set_content(response.body, response.content_type);
    };
  };
  // SO_REUSEADDR only: the library default adds SO_REUSEPORT, which lets a
  // second server share an occupied port instead of failing.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  impl_->server.Get(".*", forward("GET"));
  impl_->server.Post(".*", forward("POST"));
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0)
    throw Error(ErrorKind::io, "cannot bind " + host + ":" + std::to_string(port), "port");
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace affekt
