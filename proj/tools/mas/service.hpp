#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "mas/model.hpp"

namespace mas::cli {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// The model being served: the resolved model plus the canonical text that
// was last written for it.
struct Snapshot {
  MissionModel model;
  std::string text;
};

// Writes `text` to `path`; returns false on failure.
using ModelWriter =
    std::function<bool(const std::filesystem::path& path, const std::string& text)>;

// Writes through a sibling temporary file and renames it into place.
bool WriteFileAtomically(const std::filesystem::path& path,
                         const std::string& text);

// Transport-independent implementation of the /v1/ HTTP API.
//
// Readers take the current snapshot without blocking; mutations are applied
// one at a time, written through to the model file and only then published.
class ModelService {
 public:
  // Loads `path` if it exists, otherwise starts from an empty skeleton.
  // Fails with the parse/resolve diagnostics of an unusable file.
  static Checked<std::unique_ptr<ModelService>> Open(
      std::filesystem::path path, ModelWriter writer = WriteFileAtomically);

  HttpResponse Handle(std::string_view method, std::string_view path,
                      const std::map<std::string, std::string>& query,
                      std::string_view body);

  std::shared_ptr<const Snapshot> snapshot() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  ModelService(std::filesystem::path path, ModelWriter writer,
               std::shared_ptr<const Snapshot> initial);

  HttpResponse Get(std::string_view path,
                   const std::map<std::string, std::string>& query) const;
  HttpResponse Mutate(std::string_view method, std::string_view path,
                      std::string_view body);

  std::filesystem::path path_;
  ModelWriter writer_;
  std::shared_ptr<const Snapshot> current_;  // accessed atomically
  std::mutex write_mutex_;
};

}  // namespace mas::cli
