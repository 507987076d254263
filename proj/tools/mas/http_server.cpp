#include "http_server.hpp"

#include <sys/socket.h>

#include <map>

#include "httplib.h"

namespace mas::cli {

HttpServer::HttpServer(ModelService& service,
                       std::optional<std::filesystem::path> static_dir)
    : server_(std::make_unique<httplib::Server>()) {
  // httplib defaults to SO_REUSEPORT, which lets a second server share a
  // busy port instead of failing to bind.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  if (static_dir) server_->set_mount_point("/", static_dir->string());

  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [key, value] : req.params) query.emplace(key, value);
    auto reply = service.Handle(req.method, req.path, query, req.body);
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  };
  server_->Get(R"(/v1/.*)", forward);
  server_->Post(R"(/v1/.*)", forward);
  server_->Put(R"(/v1/.*)", forward);
  server_->Delete(R"(/v1/.*)", forward);
}

HttpServer::~HttpServer() = default;

bool HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    return port_ > 0;
  }
  if (!server_->bind_to_port(host, port)) return false;
  port_ = port;
  return true;
}

void HttpServer::Listen() { server_->listen_after_bind(); }

void HttpServer::Stop() { server_->stop(); }

}  // namespace mas::cli
