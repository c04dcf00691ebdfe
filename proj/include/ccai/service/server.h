// HTTP JSON facade over the engine.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ccai/prompt/ai_client.h"

namespace ccai::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> snapshotPath;
  std::optional<std::filesystem::path> traceLogPath;
  std::string aiKind = "mock";  // mock | http
  prompt::HttpClientConfig http;
  std::optional<std::string> fixture;  // figure8 | casestudy
  std::string corsOrigin;             // empty disables CORS headers
};

// Reads a JSON configuration file, then applies CCAI_LISTEN_ADDRESS
// ("host" or "host:port") and CCAI_AI_URL (switches the client to http).
// Throws ConfigError.
ServiceConfig loadConfig(const std::filesystem::path& path);
ServiceConfig configFromJson(const std::string& text);
void applyEnvironment(ServiceConfig& config);

class Server {
 public:
  // Loads the fixture and snapshot. Throws ConfigError.
  explicit Server(ServiceConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and serves on a background thread. Returns false on bind failure.
  bool start();
  // Blocks serving on the calling thread. Returns false on bind failure.
  bool run();
  // Blocks until the server started by start() stops.
  void wait();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ccai::service
