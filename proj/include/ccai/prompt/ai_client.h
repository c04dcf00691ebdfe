// Generation backends behind a single contract.

#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "ccai/prompt/pipeline.h"

namespace ccai::prompt {

using Clock = std::chrono::system_clock;

struct GenerationResult {
  std::string outputText;
  std::string clientId;
  Clock::time_point started;
  Clock::time_point finished;
  bool success = false;
  std::optional<std::string> failureReason;  // set iff !success
  std::string promptDigest;
};

class AIClient {
 public:
  virtual ~AIClient() = default;
  virtual std::string id() const = 0;
  // Returns the output text or throws ClientFailure.
  virtual std::string send(const std::string& prompt) = 0;
};

class ClientFailure : public std::runtime_error {
 public:
  explicit ClientFailure(const std::string& reason) : std::runtime_error(reason) {}
};

// Deterministic: "mock-digest: <sha256>" followed by every line of the
// prompt's Resources and Team & Roles sections.
class MockClient : public AIClient {
 public:
  std::string id() const override { return "mock"; }
  std::string send(const std::string& prompt) override;
};

struct HttpClientConfig {
  std::string url;  // http://host[:port]/path
  std::string authHeader;
  std::string authValue;
  double timeoutSeconds = 30.0;
};

// POSTs {"prompt": ...} and expects {"output": ...}. Failure reasons:
// "timeout", "http-status-<code>", "malformed-response", "transport-<detail>".
class HttpClient : public AIClient {
 public:
  explicit HttpClient(HttpClientConfig config);
  std::string id() const override;
  std::string send(const std::string& prompt) override;

 private:
  HttpClientConfig config_;
};

// Never throws: every failure is reported in the result.
GenerationResult generate(AIClient& client, const PromptText& prompt);

}  // namespace ccai::prompt
