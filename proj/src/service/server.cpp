#include "ccai/service/server.h"

#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ccai/error.h"
#include "ccai/prompt/trace.h"
#include "ccai/rdf/vocab.h"
#include "ccai/service/json.h"
#include "ccai/sparql/parser.h"
#include "ccai/turtle/turtle.h"

namespace ccai::service {

using nlohmann::json;
namespace api = ccai::json;

ServiceConfig configFromJson(const std::string& text) {
  auto j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("configuration is not a JSON object");
  ServiceConfig c;
  try {
    c.host = j.value("listen_address", c.host);
    c.port = j.value("port", c.port);
    if (j.contains("snapshot_path")) c.snapshotPath = j["snapshot_path"].get<std::string>();
    if (j.contains("trace_log_path")) c.traceLogPath = j["trace_log_path"].get<std::string>();
    if (j.contains("fixture")) c.fixture = j["fixture"].get<std::string>();
    c.corsOrigin = j.value("cors_origin", c.corsOrigin);
    if (j.contains("ai_client")) {
      const auto& ai = j["ai_client"];
      c.aiKind = ai.value("kind", c.aiKind);
      c.http.url = ai.value("url", c.http.url);
      c.http.authHeader = ai.value("auth_header", c.http.authHeader);
      c.http.authValue = ai.value("auth_value", c.http.authValue);
      c.http.timeoutSeconds = ai.value("timeout_seconds", c.http.timeoutSeconds);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  if (c.port < 0 || c.port > 65535) throw ConfigError("port must be in 1..65535");
  if (c.aiKind != "mock" && c.aiKind != "http") {
    throw ConfigError("ai_client.kind must be mock or http");
  }
  if (c.fixture && *c.fixture != "figure8" && *c.fixture != "casestudy") {
    throw ConfigError("fixture must be figure8 or casestudy");
  }
  return c;
}

void applyEnvironment(ServiceConfig& c) {
  if (const char* listen = std::getenv("CCAI_LISTEN_ADDRESS"); listen && *listen) {
    std::string value(listen);
    auto colon = value.rfind(':');
    if (colon != std::string::npos) {
      c.host = value.substr(0, colon);
      try {
        c.port = std::stoi(value.substr(colon + 1));
      } catch (const std::exception&) {
        throw ConfigError("CCAI_LISTEN_ADDRESS has an invalid port");
      }
      if (c.port < 0 || c.port > 65535) throw ConfigError("port must be in 1..65535");
    } else {
      c.host = value;
    }
  }
  if (const char* url = std::getenv("CCAI_AI_URL"); url && *url) {
    c.http.url = url;
    c.aiKind = "http";
  }
}

ServiceConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  auto c = configFromJson(ss.str());
  applyEnvironment(c);
  return c;
}

namespace {

struct State {
  KnowledgeBase kb;
  Graph materialized;
};

struct StoredPrompt {
  prompt::PromptText text;
  prompt::PromptContext context;
};

struct ApiError {
  int status;
  std::string code;
  std::string message;
  json extra = json::object();
};

ApiError classify(const std::exception& e) {
  if (const auto* u = dynamic_cast<const UnsupportedFeature*>(&e)) {
    return {400, "unsupported-feature", e.what(),
            {{"construct", u->construct()}, {"line", u->line()}, {"column", u->column()}}};
  }
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    return {400, "parse-error", e.what(), {{"line", p->line()}, {"column", p->column()}}};
  }
  if (dynamic_cast<const UnknownPrefix*>(&e)) return {400, "unknown-prefix", e.what()};
  if (dynamic_cast<const InvalidTerm*>(&e)) return {400, "invalid-term", e.what()};
  if (dynamic_cast<const TaskNotFound*>(&e)) return {404, "task-not-found", e.what()};
  if (dynamic_cast<const AmbiguousTaskName*>(&e)) return {409, "ambiguous-task-name", e.what()};
  if (dynamic_cast<const EmptyInstruction*>(&e)) return {400, "empty-instruction", e.what()};
  if (dynamic_cast<const EmptyAttribution*>(&e)) return {409, "empty-attribution", e.what()};
  if (dynamic_cast<const UnknownCq*>(&e)) return {404, "unknown-cq", e.what()};
  if (dynamic_cast<const UnknownClass*>(&e) || dynamic_cast<const UnknownProperty*>(&e)) {
    return {400, "unknown-term", e.what()};
  }
  if (dynamic_cast<const json::exception*>(&e)) return {400, "bad-request", e.what()};
  if (dynamic_cast<const Error*>(&e)) return {400, "bad-request", e.what()};
  return {500, "internal-error", e.what()};
}

void sendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2), "application/json");
}

void sendError(httplib::Response& res, const ApiError& e) {
  json body = {{"code", e.code}, {"message", e.message}};
  body.update(e.extra);
  sendJson(res, e.status, {{"error", body}});
}

void writeAtomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write snapshot " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("cannot write snapshot " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

struct Server::Impl {
  explicit Impl(ServiceConfig c) : config(std::move(c)) {
    auto kb = config.fixture ? loadFixture(*config.fixture) : builtinTbox();
    if (config.snapshotPath && std::filesystem::exists(*config.snapshotPath)) {
      std::ifstream in(*config.snapshotPath, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        loadTurtle(kb, ss.str());
      } catch (const Error& e) {
        throw ConfigError("snapshot " + config.snapshotPath->string() + ": " + e.what());
      }
    }
    if (config.traceLogPath) log.emplace(*config.traceLogPath);
    state = std::make_shared<const State>(State{kb, materialize(kb)});
    routes();
  }

  std::shared_ptr<const State> snapshot() {
    std::lock_guard lock(stateMutex);
    return state;
  }

  // Applies `change` to a private copy and publishes it; readers keep the
  // snapshot they started with.
  template <typename F>
  auto mutate(F&& change) {
    std::lock_guard writer(writerMutex);
    KnowledgeBase kb = snapshot()->kb;
    auto result = change(kb);
    auto next = std::make_shared<const State>(State{kb, materialize(kb)});
    if (config.snapshotPath) {
      writeAtomically(*config.snapshotPath, serializeTurtle(next->kb.combined()));
    }
    std::lock_guard lock(stateMutex);
    state = std::move(next);
    return result;
  }

  std::unique_ptr<prompt::AIClient> client() const {
    if (config.aiKind == "http") return std::make_unique<prompt::HttpClient>(config.http);
    return std::make_unique<prompt::MockClient>();
  }

  template <typename F>
  httplib::Server::Handler guard(F&& handler) {
    return [handler = std::forward<F>(handler)](const httplib::Request& req,
                                                  httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const std::exception& e) {
        sendError(res, classify(e));
      }
    };
  }

  static json body(const httplib::Request& req) {
    auto j = json::parse(req.body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error("request body must be a JSON object");
    return j;
  }

  void routes() {
    // httplib's default sets SO_REUSEPORT, which would let a second instance
    // share the port instead of failing to bind.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    if (!config.corsOrigin.empty()) {
      http.set_default_headers({{"Access-Control-Allow-Origin", config.corsOrigin},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
      http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }

    http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      sendJson(res, 200, {{"status", "ok"}});
    });

    http.Post("/kb", guard([this](const httplib::Request& req, httplib::Response& res) {
      std::size_t loaded = mutate([&](KnowledgeBase& kb) { return loadTurtle(kb, req.body); });
      sendJson(res, 200, {{"triples_loaded", loaded}});
    }));

    http.Post("/query", guard([this](const httplib::Request& req, httplib::Response& res) {
      auto j = body(req);
      auto text = j.at("sparql").get<std::string>();
      auto s = snapshot();
      auto query = sparql::parseQuery(text, s->kb.prefixes);
      auto result = sparql::evaluate(s->materialized, query);
      auto out = api::sparqlResults(result);
      if (!query.warnings.empty()) out["warnings"] = query.warnings;
      sendJson(res, 200, out);
    }));

    http.Get("/tasks", guard([this](const httplib::Request&, httplib::Response& res) {
      sendJson(res, 200, api::tasks(prompt::listTasks(snapshot()->materialized)));
    }));

    http.Get(R"(/tasks/(.+)/context)",
             guard([this](const httplib::Request& req, httplib::Response& res) {
               auto s = snapshot();
               auto task = prompt::resolveTask(s->kb, s->materialized, req.matches[1].str());
               sendJson(res, 200, api::promptContext(prompt::retrieveContext(s->materialized, task)));
             }));

    http.Get(R"(/tasks/(.+)/graph)",
             guard([this](const httplib::Request& req, httplib::Response& res) {
               auto s = snapshot();
               auto task = prompt::resolveTask(s->kb, s->materialized, req.matches[1].str());
               int radius = req.has_param("radius") ? std::stoi(req.get_param_value("radius")) : 2;
               sendJson(res, 200, neighbourhood(s->materialized, task, radius));
             }));

    http.Post("/prompts", guard([this](const httplib::Request& req, httplib::Response& res) {
      auto j = body(req);
      auto s = snapshot();
      auto task = prompt::resolveTask(s->kb, s->materialized, j.at("task").get<std::string>());
      auto ctx = prompt::retrieveContext(s->materialized, task);
      std::optional<std::string> expected;
      if (j.contains("expected_output") && j["expected_output"].is_string()) {
        expected = j["expected_output"].get<std::string>();
      }
      auto text = prompt::assemblePrompt(ctx, j.value("instruction", std::string()), expected,
                                         s->kb.prefixes);
      auto score = prompt::scoreIndicators(s->materialized, task, text.rendered);
      auto id = text.digest();
      {
        std::lock_guard lock(promptsMutex);
        prompts.insert_or_assign(id, StoredPrompt{text, ctx});
      }
      auto out = api::promptText(text);
      out["prompt_id"] = id;
      out["score_preview"] = api::indicators(score);
      out["context"] = api::promptContext(ctx);
      sendJson(res, 201, out);
    }));

    http.Post("/generations", guard([this](const httplib::Request& req, httplib::Response& res) {
      auto j = body(req);
      auto id = j.at("prompt_id").get<std::string>();
      std::optional<StoredPrompt> stored;
      {
        std::lock_guard lock(promptsMutex);
        if (auto it = prompts.find(id); it != prompts.end()) stored = it->second;
      }
      if (!stored) return sendError(res, {404, "prompt-not-found", "unknown prompt_id " + id});
      auto prefixes = snapshot()->kb.prefixes;
      std::vector<Iri> agents;
      for (const auto& a : j.value("attributed_to", json::array())) {
        agents.push_back(prefixes.resolve(a.get<std::string>()));
      }
      if (agents.empty()) throw EmptyAttribution("attributed_to must list at least one agent");
      auto kind = prompt::parseArtifactKind(j.value("kind", std::string("AIDraftOutput")));
      if (!kind) throw Error("kind must be AIDraftOutput or CollaborativeArtifact");

      auto ai = client();
      auto result = prompt::generate(*ai, stored->text);
      if (!result.success) {
        return sendError(res, {502, "ai-client-failure", result.failureReason.value_or("unknown"),
                               {{"generation", api::generation(result)}}});
      }
      auto record = mutate([&](KnowledgeBase& kb) {
        return prompt::linkTrace(kb, stored->context, result, *kind, agents,
                                 log ? &*log : nullptr);
      });
      sendJson(res, 201, {{"trace", api::trace(record)}, {"generation", api::generation(result)}});
    }));

    http.Get("/traces", guard([this](const httplib::Request&, httplib::Response& res) {
      json out = json::array();
      if (log) {
        for (const auto& r : log->readAll()) out.push_back(api::trace(r));
      }
      sendJson(res, 200, out);
    }));

    http.Get(R"(/artifacts/(.+)/provenance)",
             guard([this](const httplib::Request& req, httplib::Response& res) {
               auto s = snapshot();
               auto artifact = s->kb.prefixes.resolve(req.matches[1].str());
               auto p = prompt::provenanceOf(s->materialized, artifact);
               if (!p) {
                 return sendError(res, {404, "artifact-not-found", "unknown artifact " + artifact.str()});
               }
               sendJson(res, 200, api::provenance(*p));
             }));

    http.Get("/validate", guard([this](const httplib::Request&, httplib::Response& res) {
      sendJson(res, 200, api::validation(validate(snapshot()->kb)));
    }));

    http.Get("/metrics", guard([this](const httplib::Request&, httplib::Response& res) {
      sendJson(res, 200, api::metricsReport(metrics::measure(snapshot()->kb.combined())));
    }));

    http.Get(R"(/cq/(\d+))", guard([this](const httplib::Request& req, httplib::Response& res) {
      auto cq = cqFromNumber(std::stoi(req.matches[1].str()));
      auto s = snapshot();
      std::optional<std::vector<Term>> targets;
      auto n = req.get_param_value_count("target");
      if (n > 0) {
        targets.emplace();
        for (std::size_t i = 0; i < n; ++i) {
          targets->push_back(Term(s->kb.prefixes.resolve(req.get_param_value("target", i))));
        }
      }
      sendJson(res, 200, api::sparqlResults(runCq(s->materialized, cq, targets)));
    }));
  }

  static json neighbourhood(const Graph& g, const Iri& task, int radius) {
    std::set<Term> nodes{Term(task)};
    std::vector<Term> frontier{Term(task)};
    for (int step = 0; step < radius && !frontier.empty(); ++step) {
      std::vector<Term> next;
      for (const auto& n : frontier) {
        auto visit = [&](const Term& other) {
          if (!other.isLiteral() && nodes.insert(other).second) next.push_back(other);
        };
        for (const auto& t : g.match(n, std::nullopt, std::nullopt)) visit(t.object());
        for (const auto& t : g.match(std::nullopt, std::nullopt, n)) visit(t.subject());
      }
      frontier = std::move(next);
    }
    json jn = json::array();
    json je = json::array();
    for (const auto& n : nodes) jn.push_back(n.isIri() ? n.iri().str() : "_:" + n.blank().label);
    for (const auto& t : g.triples()) {
      if (t.predicate() == vocab::rdfType()) continue;
      if (nodes.contains(t.subject()) && nodes.contains(t.object())) {
        auto name = [](const Term& x) { return x.isIri() ? x.iri().str() : "_:" + x.blank().label; };
        je.push_back({{"source", name(t.subject())},
                      {"predicate", t.predicate().str()},
                      {"target", name(t.object())}});
      }
    }
    return {{"nodes", jn}, {"edges", je}};
  }

  ServiceConfig config;
  std::shared_ptr<const State> state;
  std::mutex stateMutex;
  std::mutex writerMutex;
  std::map<std::string, StoredPrompt> prompts;
  std::mutex promptsMutex;
  std::optional<prompt::TraceLog> log;
  httplib::Server http;
  std::thread thread;
  int boundPort = 0;
};

Server::Server(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Server::~Server() { stop(); }

bool Server::start() {
  auto& i = *impl_;
  if (i.config.port == 0) {
    i.boundPort = i.http.bind_to_any_port(i.config.host);
    if (i.boundPort <= 0) return false;
  } else {
    if (!i.http.bind_to_port(i.config.host, i.config.port)) return false;
    i.boundPort = i.config.port;
  }
  i.thread = std::thread([&i] { i.http.listen_after_bind(); });
  i.http.wait_until_ready();
  return true;
}

bool Server::run() {
  if (!start()) return false;
  wait();
  return true;
}

void Server::wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void Server::stop() {
  if (!impl_) return;
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int Server::port() const { return impl_->boundPort; }

}  // namespace ccai::service
