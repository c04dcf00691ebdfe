#include <gtest/gtest.h>
#include <httplib.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>

#include "ccai/error.h"
#include "ccai/model/knowledge_base.h"
#include "ccai/service/server.h"
#include "ccai/turtle/turtle.h"
#include "support/support.h"

namespace ccai::service {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::string kCcai = "http://gamaizer.ai/ccai#";

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("ccai-service-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    start("casestudy");
  }
  void TearDown() override {
    server.reset();
    fs::remove_all(dir);
  }

  void start(std::optional<std::string> fixture) {
    server.reset();
    ServiceConfig config;
    config.port = 0;
    config.fixture = std::move(fixture);
    config.snapshotPath = dir / "kb.ttl";
    config.traceLogPath = dir / "trace.jsonl";
    config.corsOrigin = "http://localhost:5173";
    server = std::make_unique<Server>(config);
    ASSERT_TRUE(server->start());
    client = std::make_unique<httplib::Client>("127.0.0.1", server->port());
  }

  json get(const std::string& path, int expected = 200) {
    auto res = client->Get(path);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expected) << path << ": " << res->body;
    EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
    return json::parse(res->body);
  }

  json post(const std::string& path, const std::string& body, int expected, const char* type = "application/json") {
    auto res = client->Post(path, body, type);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expected) << path << ": " << res->body;
    return json::parse(res->body);
  }

  static std::string encode(const std::string& s) { return httplib::detail::encode_query_param(s); }

  fs::path dir;
  std::unique_ptr<Server> server;
  std::unique_ptr<httplib::Client> client;
};

TEST_F(ServiceTest, ContextQueryHasNineBindings) {
  auto body = post("/query", json{{"sparql", testing::readText(testing::dataPath("queries/query7.rq"))}}.dump(), 200);
  EXPECT_EQ(body["head"]["vars"], json({"task", "process", "context", "resource", "role", "agent"}));
  EXPECT_EQ(body["results"]["bindings"].size(), 9u);
  EXPECT_EQ(body["results"]["bindings"][0]["task"]["type"], "uri");
}

TEST_F(ServiceTest, ContextAttributesOmitUnboundCells) {
  auto body = post("/query", json{{"sparql", testing::readText(testing::dataPath("queries/query5.rq"))}}.dump(), 200);
  ASSERT_EQ(body["results"]["bindings"].size(), 1u);
  const auto& row = body["results"]["bindings"][0];
  EXPECT_FALSE(row.contains("location"));
  EXPECT_EQ(row["start"]["datatype"], "http://www.w3.org/2001/XMLSchema#date");
}

TEST_F(ServiceTest, QueryErrors) {
  auto filter = post("/query", json{{"sparql", "SELECT ?x WHERE { ?x ?p ?o FILTER(?o) }"}}.dump(), 400);
  EXPECT_EQ(filter["error"]["code"], "unsupported-feature");
  auto bad = post("/query", json{{"sparql", "SELECT ?x WHERE {\n ?x ORDER }"}}.dump(), 400);
  EXPECT_EQ(bad["error"]["code"], "parse-error");
  EXPECT_EQ(bad["error"]["line"], 2);
  EXPECT_EQ(post("/query", "not json", 400)["error"]["code"], "bad-request");
}

TEST_F(ServiceTest, LoadTurtle) {
  auto loaded = post("/kb", "@prefix ccai: <http://gamaizer.ai/ccai#> .\nccai:NewTask a ccai:Task ; ccai:taskName \"New\" .",
                     200, "text/turtle");
  EXPECT_EQ(loaded["triples_loaded"], 2);
  EXPECT_EQ(post("/kb", "", 200, "text/turtle")["triples_loaded"], 0);
  auto bad = post("/kb", "@prefix ccai: <http://gamaizer.ai/ccai#> .\nccai:x ccai:y", 400, "text/turtle");
  EXPECT_EQ(bad["error"]["code"], "parse-error");
  EXPECT_EQ(bad["error"]["line"], 2);
  auto snapshot = parseTurtle(testing::readText((dir / "kb.ttl").string())).graph;
  EXPECT_TRUE(snapshot.contains(Triple(Iri(kCcai + "NewTask"), Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"),
                                       Iri(kCcai + "Task"))));
  EXPECT_FALSE(fs::exists(dir / "kb.ttl.tmp"));
}

TEST_F(ServiceTest, SnapshotReloadsOnRestart) {
  post("/kb", "@prefix ccai: <http://gamaizer.ai/ccai#> .\nccai:Later a ccai:Task ; ccai:taskName \"Later\" .", 200,
       "text/turtle");
  start("casestudy");
  auto tasks = get("/tasks");
  bool found = false;
  for (const auto& t : tasks) found = found || t["name"] == "Later";
  EXPECT_TRUE(found);
}

TEST_F(ServiceTest, TasksAndContext) {
  auto tasks = get("/tasks");
  ASSERT_TRUE(tasks.is_array());
  auto ctx = get("/tasks/" + encode("View & Update Competency Profiles") + "/context");
  EXPECT_EQ(ctx["resources"].size(), 3u);
  EXPECT_EQ(ctx["role_agent_pairs"].size(), 3u);
  EXPECT_EQ(ctx["context"], kCcai + "Sprint1Context");
  auto byIri = get("/tasks/" + encode(kCcai + "ViewUpdateCompetencyProfiles") + "/context");
  EXPECT_EQ(byIri, ctx);
  EXPECT_EQ(get("/tasks/nope/context", 404)["error"]["code"], "task-not-found");
}

TEST_F(ServiceTest, TaskGraph) {
  auto sub = get("/tasks/ccai:ViewUpdateCompetencyProfiles/graph?radius=1");
  EXPECT_GT(sub["nodes"].size(), 7u);
  for (const auto& e : sub["edges"]) {
    EXPECT_TRUE(e.contains("source") && e.contains("predicate") && e.contains("target"));
  }
  auto bigger = get("/tasks/ccai:ViewUpdateCompetencyProfiles/graph");
  EXPECT_GE(bigger["nodes"].size(), sub["nodes"].size());
}

TEST_F(ServiceTest, PromptGenerationProvenance) {
  auto prompt = post("/prompts",
                     json{{"task", "View & Update Competency Profiles"},
                          {"instruction", "Implement the profile view and update feature."}}
                         .dump(),
                     201);
  ASSERT_TRUE(prompt.contains("prompt_id"));
  EXPECT_EQ(prompt["score_preview"]["omitted_items"], 0);
  EXPECT_NE(prompt["rendered"].get<std::string>().find("Resources:"), std::string::npos);
  EXPECT_EQ(prompt["prompt_id"], prompt["prompt_digest"]);

  auto empty = post("/generations", json{{"prompt_id", prompt["prompt_id"]}, {"attributed_to", json::array()}}.dump(), 409);
  EXPECT_EQ(empty["error"]["code"], "empty-attribution");
  EXPECT_EQ(post("/generations", json{{"prompt_id", "nope"}, {"attributed_to", {"ccai:HumanQA_Lee"}}}.dump(), 404)["error"]["code"],
            "prompt-not-found");

  auto gen = post("/generations",
                  json{{"prompt_id", prompt["prompt_id"]},
                       {"attributed_to", {"ccai:AICodeAssistant", "ccai:HumanDeveloper_Carol"}},
                       {"kind", "CollaborativeArtifact"}}
                      .dump(),
                  201);
  std::string artifact = gen["trace"]["artifact"];
  EXPECT_TRUE(gen["generation"]["success"].get<bool>());

  auto cq1 = get("/cq/1?target=" + encode(artifact));
  EXPECT_EQ(cq1["results"]["bindings"].size(), 2u);
  auto prov = get("/artifacts/" + encode(artifact) + "/provenance");
  EXPECT_EQ(prov["agents"].size(), 2u);
  EXPECT_EQ(prov["tasks"], json({kCcai + "ViewUpdateCompetencyProfiles"}));
  EXPECT_EQ(get("/artifacts/ccai:nothing/provenance", 404)["error"]["code"], "artifact-not-found");
  auto traces = get("/traces");
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0]["artifact"], artifact);
  EXPECT_EQ(get("/validate"), json({{"errors", json::array()}, {"warnings", json::array()}}));
}

TEST_F(ServiceTest, PromptErrors) {
  EXPECT_EQ(post("/prompts", json{{"task", "Nope"}, {"instruction", "x"}}.dump(), 404)["error"]["code"], "task-not-found");
  EXPECT_EQ(post("/prompts", json{{"task", "View & Update Competency Profiles"}, {"instruction", " "}}.dump(), 400)["error"]["code"],
            "empty-instruction");
}

TEST_F(ServiceTest, ValidateMetricsCq) {
  EXPECT_EQ(get("/validate"), json({{"errors", json::array()}, {"warnings", json::array()}}));
  auto m = get("/metrics");
  EXPECT_EQ(m["object_property_axioms"]["InverseObjectProperties"], 3);
  EXPECT_EQ(m["class_axioms"]["DisjointClasses"], 4);
  EXPECT_TRUE(m["relationship_richness_informative"].get<bool>());
  EXPECT_EQ(get("/cq/6")["results"]["bindings"].size(), 1u);
  EXPECT_EQ(get("/cq/9", 404)["error"]["code"], "unknown-cq");
}

TEST_F(ServiceTest, Figure8CqTwo) {
  start("figure8");
  auto body = get("/cq/2");
  ASSERT_EQ(body["results"]["bindings"].size(), 1u);
  EXPECT_EQ(body["results"]["bindings"][0]["role"]["value"], kCcai + "GenerativeAIAnalyticsAgentRole");
}

TEST_F(ServiceTest, ReadsAreStable) {
  for (const char* path : {"/tasks", "/metrics", "/validate", "/cq/5"}) EXPECT_EQ(get(path), get(path)) << path;
}

TEST_F(ServiceTest, AiFailureIs502) {
  server.reset();
  ServiceConfig config;
  config.port = 0;
  config.fixture = "casestudy";
  config.aiKind = "http";
  config.http.url = "http://127.0.0.1:1/generate";
  Server failing(config);
  ASSERT_TRUE(failing.start());
  httplib::Client c("127.0.0.1", failing.port());
  auto prompt = c.Post("/prompts", json{{"task", "View & Update Competency Profiles"}, {"instruction", "Go"}}.dump(),
                       "application/json");
  ASSERT_TRUE(prompt);
  auto id = json::parse(prompt->body)["prompt_id"];
  auto res = c.Post("/generations", json{{"prompt_id", id}, {"attributed_to", {"ccai:HumanQA_Lee"}}}.dump(),
                    "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 502);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "ai-client-failure");
}

TEST(ServiceConfig, ParsingAndEnvironment) {
  auto c = configFromJson(R"({"listen_address":"0.0.0.0","port":9000,"fixture":"figure8",
                              "ai_client":{"kind":"http","url":"http://x/y","timeout_seconds":5}})");
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 9000);
  EXPECT_EQ(c.aiKind, "http");
  EXPECT_EQ(c.http.timeoutSeconds, 5);
  EXPECT_THROW(configFromJson("[]"), ConfigError);
  EXPECT_THROW(configFromJson(R"({"port":70000})"), ConfigError);
  EXPECT_THROW(configFromJson(R"({"fixture":"other"})"), ConfigError);
  EXPECT_THROW(configFromJson(R"({"ai_client":{"kind":"carrier-pigeon"}})"), ConfigError);
  ::setenv("CCAI_LISTEN_ADDRESS", "127.0.0.2:7001", 1);
  ::setenv("CCAI_AI_URL", "http://ai.local/gen", 1);
  ServiceConfig d;
  applyEnvironment(d);
  ::unsetenv("CCAI_LISTEN_ADDRESS");
  ::unsetenv("CCAI_AI_URL");
  EXPECT_EQ(d.host, "127.0.0.2");
  EXPECT_EQ(d.port, 7001);
  EXPECT_EQ(d.aiKind, "http");
  EXPECT_EQ(d.http.url, "http://ai.local/gen");
  EXPECT_THROW(loadConfig("/nonexistent/config.json"), ConfigError);
}

TEST(ServiceConfig, BindFailureReported) {
  ServiceConfig a;
  a.port = 0;
  Server first(a);
  ASSERT_TRUE(first.start());
  ServiceConfig b;
  b.port = first.port();
  Server second(b);
  EXPECT_FALSE(second.start());
}

}  // namespace
}  // namespace ccai::service
