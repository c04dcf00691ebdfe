#include "ccai/prompt/ai_client.h"

#include <httplib.h>

#include <json.hpp>
#include <regex>
#include <sstream>

namespace ccai::prompt {

std::string MockClient::send(const std::string& prompt) {
  std::string out = "mock-digest: " + sha256Hex(prompt) + "\n";
  std::istringstream in(prompt);
  std::string line;
  bool echo = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == ':' && line.front() != '-') {
      echo = line == "Resources:" || line == "Team & Roles:";
      continue;
    }
    if (echo && line.starts_with("- ")) out += line + "\n";
  }
  return out;
}

HttpClient::HttpClient(HttpClientConfig config) : config_(std::move(config)) {}

std::string HttpClient::id() const { return "http:" + config_.url; }

std::string HttpClient::send(const std::string& prompt) {
  if (config_.timeoutSeconds <= 0) throw ClientFailure("timeout");
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.url, m, kUrl)) {
    throw ClientFailure("transport-invalid-url");
  }
  std::string path = m[2].matched ? m[2].str() : "/";

  httplib::Client client(m[1].str());
  auto seconds = static_cast<time_t>(config_.timeoutSeconds);
  auto micros = static_cast<time_t>((config_.timeoutSeconds - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  httplib::Headers headers;
  if (!config_.authHeader.empty()) headers.emplace(config_.authHeader, config_.authValue);

  nlohmann::json body = {{"prompt", prompt}};
  auto started = std::chrono::steady_clock::now();
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    auto err = res.error();
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    if (err == httplib::Error::ConnectionTimeout ||
        ((err == httplib::Error::Read || err == httplib::Error::Write) &&
         elapsed.count() >= config_.timeoutSeconds)) {
      throw ClientFailure("timeout");
    }
    std::string detail = httplib::to_string(err);
    for (auto& c : detail) c = c == ' ' ? '-' : static_cast<char>(std::tolower(c));
    throw ClientFailure("transport-" + detail);
  }
  if (res->status != 200) throw ClientFailure("http-status-" + std::to_string(res->status));
  auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("output") ||
      !parsed["output"].is_string()) {
    throw ClientFailure("malformed-response");
  }
  return parsed["output"].get<std::string>();
}

GenerationResult generate(AIClient& client, const PromptText& prompt) {
  GenerationResult r;
  r.promptDigest = prompt.digest();
  r.started = Clock::now();
  try {
    r.clientId = client.id();
    r.outputText = client.send(prompt.rendered);
    r.success = true;
  } catch (const std::exception& e) {
    r.success = false;
    r.failureReason = e.what();
  } catch (...) {
    r.success = false;
    r.failureReason = "unknown";
  }
  r.finished = Clock::now();
  if (r.finished < r.started) r.finished = r.started;
  return r;
}

}  // namespace ccai::prompt
