#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "service.hpp"

namespace httplib {
class Server;
}

namespace mas::cli {

// Binds a ModelService to a TCP port with cpp-httplib.
class HttpServer {
 public:
  explicit HttpServer(ModelService& service,
                      std::optional<std::filesystem::path> static_dir = {});
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns false when the address cannot be bound (e.g. port in use).
  // Port 0 picks a free port; see port().
  bool Bind(const std::string& host, int port);
  int port() const { return port_; }

  // Serves until Stop() is called from another thread.
  void Listen();
  void Stop();

 private:
  std::unique_ptr<httplib::Server> server_;
  int port_ = 0;
};

}  // namespace mas::cli
