// Command-line front end: every subcommand composes library operations and
// prints an aligned table, or JSON with --json.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ccai/error.h"
#include "ccai/service/json.h"
#include "ccai/service/server.h"
#include "ccai/sparql/parser.h"
#include "ccai/turtle/turtle.h"

namespace {

using namespace ccai;
using Json = nlohmann::json;
namespace api = ccai::json;

constexpr int kUserError = 1;
constexpr int kInternalError = 2;
constexpr int kValidationFailed = 3;

struct Options {
  std::string kbPath;
  std::string fixture;
  std::string traceLog;
  bool json = false;
};

std::string readFile(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KnowledgeBase openKb(const Options& o) {
  KnowledgeBase kb = o.fixture.empty() ? builtinTbox() : loadFixture(o.fixture);
  if (!o.kbPath.empty() && std::filesystem::exists(o.kbPath)) loadTurtle(kb, readFile(o.kbPath));
  return kb;
}

void saveKb(const Options& o, const KnowledgeBase& kb) {
  if (o.kbPath.empty()) return;
  auto tmp = o.kbPath + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << serializeTurtle(kb.combined());
    if (!out) throw Error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, o.kbPath);
}

using Table = std::vector<std::vector<std::string>>;

void printTable(const std::vector<std::string>& header, const Table& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], r[i].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out += cells[i];
      if (i + 1 < cells.size()) out += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    std::cout << out << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : rows) line(r);
}

std::string cell(const PrefixMap& p, const std::optional<Term>& t) {
  if (!t) return "";
  if (t->isIri()) return p.render(t->iri());
  if (t->isBlank()) return "_:" + t->blank().label;
  return t->literal().lexical();
}

void printSolutions(const Options& o, const PrefixMap& p, const sparql::SolutionSequence& s) {
  if (o.json) {
    std::cout << api::sparqlResults(s).dump(2) << '\n';
    return;
  }
  Table rows;
  for (const auto& r : s.rows) {
    std::vector<std::string> cells;
    for (const auto& c : r) cells.push_back(cell(p, c));
    rows.push_back(std::move(cells));
  }
  std::vector<std::string> header;
  for (const auto& v : s.variables) header.push_back("?" + v);
  printTable(header, rows);
  std::cout << '(' << s.size() << " row" << (s.size() == 1 ? "" : "s") << ")\n";
}

void printContext(const Options& o, const PrefixMap& p, const prompt::PromptContext& c) {
  if (o.json) {
    std::cout << api::promptContext(c).dump(2) << '\n';
    return;
  }
  auto opt = [&](const std::optional<Iri>& i) { return i ? p.render(*i) : std::string(); };
  Table rows{{"task", p.render(c.task)},
             {"task name", c.taskName},
             {"process", opt(c.process)},
             {"context", opt(c.context)},
             {"domain label", c.domainLabel.value_or("")},
             {"start", c.start.value_or("")},
             {"end", c.end.value_or("")},
             {"location", c.location.value_or("")}};
  for (const auto& r : c.resources) rows.push_back({"resource", p.render(r)});
  for (const auto& [role, agent] : c.roleAgentPairs) {
    rows.push_back({"role-agent", p.render(role) + " -> " + p.render(agent)});
  }
  for (const auto& [iri, label] : c.constraints) {
    rows.push_back({"constraint", p.render(iri) + " \"" + label + "\""});
  }
  printTable({"field", "value"}, rows);
}

std::unique_ptr<prompt::AIClient> makeClient(bool mock, const std::string& url) {
  if (mock || url.empty()) return std::make_unique<prompt::MockClient>();
  prompt::HttpClientConfig cfg;
  cfg.url = url;
  return std::make_unique<prompt::HttpClient>(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaboration-trace knowledge engine"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--kb", o.kbPath, "KB snapshot (Turtle)")->envname("CCAI_KB");
  app.add_option("--fixture", o.fixture, "Autoload bundled data")
      ->check(CLI::IsMember({"figure8", "casestudy"}));
  app.add_option("--trace-log", o.traceLog, "Trace log (JSON lines)")->envname("CCAI_TRACE_LOG");
  app.add_flag("--json", o.json, "Machine-readable output");

  std::string file;
  auto* load = app.add_subcommand("load", "Merge a Turtle file into the KB snapshot");
  load->add_option("file", file)->required();

  auto* query = app.add_subcommand("query", "Run a SPARQL query over the materialized KB");
  query->add_option("file", file, "Query file or - for stdin")->required();

  int cqNumber = 0;
  std::vector<std::string> targets;
  auto* cq = app.add_subcommand("cq", "Run a competency question");
  cq->add_option("n", cqNumber)->required();
  cq->add_option("--target", targets, "Input IRI (repeatable)");

  auto* validateCmd = app.add_subcommand("validate", "Check the KB against the schema");
  auto* metricsCmd = app.add_subcommand("metrics", "Ontology size counts and richness");

  std::string task;
  bool listTasks = false;
  auto* context = app.add_subcommand("context", "Retrieve the prompt context of a task");
  context->add_option("task", task, "Task name, CURIE or IRI");
  context->add_flag("--list-tasks", listTasks);

  std::string instruction;
  std::optional<std::string> expected;
  auto* promptCmd = app.add_subcommand("prompt", "Assemble the prompt for a task");
  promptCmd->add_option("task", task)->required();
  promptCmd->add_option("--instruction", instruction)->required();
  promptCmd->add_option("--expected", expected);

  std::vector<std::string> attribute;
  bool mock = false;
  std::string kindName = "AIDraftOutput";
  std::string aiUrl;
  auto* generateCmd = app.add_subcommand("generate", "Prompt the AI client and link a trace");
  generateCmd->add_option("task", task)->required();
  generateCmd->add_option("--instruction", instruction)->required();
  generateCmd->add_option("--expected", expected);
  generateCmd->add_option("--attribute", attribute, "Agent IRI (repeatable)")->required();
  generateCmd->add_flag("--mock", mock, "Use the mock client");
  generateCmd->add_option("--kind", kindName, "AIDraftOutput or CollaborativeArtifact");
  generateCmd->add_option("--ai-url", aiUrl, "HTTP AI endpoint")->envname("CCAI_AI_URL");

  std::string artifact;
  auto* traceCmd = app.add_subcommand("trace", "Show the provenance of an artifact");
  traceCmd->add_option("artifact", artifact)->required();

  std::optional<std::string> scoreArtifact;
  auto* scoreCmd = app.add_subcommand("score", "Score the explicitness of a text for a task");
  scoreCmd->add_option("task", task)->required();
  scoreCmd->add_option("--file", file)->required();
  scoreCmd->add_option("--artifact", scoreArtifact, "Artifact for the provenance check");

  std::string configPath;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", configPath)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (serve->parsed()) {
      service::ServiceConfig config;
      try {
        config = service::loadConfig(configPath);
        if (!o.fixture.empty()) config.fixture = o.fixture;
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
      }
      std::unique_ptr<service::Server> server;
      try {
        server = std::make_unique<service::Server>(config);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
      }
      if (!server->start()) {
        std::cerr << "error: cannot bind " << config.host << ':' << config.port << '\n';
        return 2;
      }
      std::cerr << "listening on " << config.host << ':' << server->port() << '\n';
      server->wait();
      return 0;
    }

    KnowledgeBase kb = openKb(o);
    const PrefixMap& prefixes = kb.prefixes;

    if (load->parsed()) {
      if (o.kbPath.empty()) throw Error("load needs --kb or CCAI_KB");
      auto added = loadTurtle(kb, readFile(file));
      saveKb(o, kb);
      if (o.json) {
        std::cout << Json{{"triples_loaded", added}}.dump(2) << '\n';
      } else {
        std::cout << "triples loaded: " << added << '\n';
      }
      return 0;
    }

    Graph materialized = materialize(kb);

    if (query->parsed()) {
      auto q = sparql::parseQuery(readFile(file), prefixes);
      for (const auto& w : q.warnings) std::cerr << "warning: " << w << '\n';
      printSolutions(o, prefixes, sparql::evaluate(materialized, q));
    } else if (cq->parsed()) {
      std::optional<std::vector<Term>> input;
      if (!targets.empty()) {
        input.emplace();
        for (const auto& t : targets) input->push_back(Term(prefixes.resolve(t)));
      }
      printSolutions(o, prefixes, runCq(materialized, cqFromNumber(cqNumber), input));
    } else if (validateCmd->parsed()) {
      auto report = validate(kb);
      if (o.json) {
        std::cout << api::validation(report).dump(2) << '\n';
      } else {
        Table rows;
        auto add = [&](const char* level, const std::vector<Violation>& v) {
          for (const auto& x : v) rows.push_back({level, std::string(toString(x.kind)), x.explanation});
        };
        add("error", report.errors);
        add("warning", report.warnings);
        printTable({"level", "kind", "explanation"}, rows);
        std::cout << report.errors.size() << " errors, " << report.warnings.size() << " warnings\n";
      }
      return report.isConsistent() ? 0 : kValidationFailed;
    } else if (metricsCmd->parsed()) {
      auto r = metrics::measure(kb.combined());
      if (o.json) {
        std::cout << api::metricsReport(r).dump(2) << '\n';
      } else {
        using metrics::formatRatio;
        const auto& b = r.base;
        Table rows{{"Classes", std::to_string(b.classes)},
                   {"Object properties", std::to_string(b.objectProperties)},
                   {"Data properties", std::to_string(b.datatypeProperties)},
                   {"Individuals", std::to_string(b.individuals)},
                   {"SubClassOf", std::to_string(b.subclassAxioms)},
                   {"DisjointClasses", std::to_string(b.disjointAxioms)},
                   {"InverseObjectProperties", std::to_string(b.inverseAxioms)},
                   {"Class assertions", std::to_string(b.classAssertions)},
                   {"Object property assertions", std::to_string(b.objectAssertions)},
                   {"Data property assertions", std::to_string(b.dataAssertions)},
                   {"Instantiated classes", std::to_string(r.instantiatedClasses)},
                   {"Attribute richness", formatRatio(r.attributeRichness)},
                   {"Inheritance richness", formatRatio(r.inheritanceRichness)},
                   {"Relationship richness (informative)", formatRatio(r.relationshipRichness)},
                   {"Inverse relations ratio", formatRatio(r.inverseRatio)},
                   {"Class richness", formatRatio(r.classRichness)}};
        for (const auto& c : r.relationshipCandidates) {
          rows.push_back({"  RR candidate: " + c.label, formatRatio(c.relationshipRichness)});
        }
        printTable({"metric", "value"}, rows);
      }
    } else if (context->parsed()) {
      if (listTasks) {
        auto tasks = prompt::listTasks(materialized);
        if (o.json) {
          std::cout << api::tasks(tasks).dump(2) << '\n';
        } else {
          Table rows;
          for (const auto& t : tasks) {
            rows.push_back({prefixes.render(t.task), t.name,
                            t.process ? prefixes.render(*t.process) : ""});
          }
          printTable({"task", "name", "process"}, rows);
        }
        return 0;
      }
      if (task.empty()) throw Error("context needs a task or --list-tasks");
      auto iri = prompt::resolveTask(kb, materialized, task);
      printContext(o, prefixes, prompt::retrieveContext(materialized, iri));
    } else if (promptCmd->parsed()) {
      auto iri = prompt::resolveTask(kb, materialized, task);
      auto text = prompt::assemblePrompt(prompt::retrieveContext(materialized, iri), instruction,
                                         expected, prefixes);
      if (o.json) {
        auto out = api::promptText(text);
        out["prompt_id"] = text.digest();
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << text.rendered;
      }
    } else if (generateCmd->parsed()) {
      auto kind = prompt::parseArtifactKind(kindName);
      if (!kind) throw Error("--kind must be AIDraftOutput or CollaborativeArtifact");
      std::vector<Iri> agents;
      for (const auto& a : attribute) agents.push_back(prefixes.resolve(a));
      auto iri = prompt::resolveTask(kb, materialized, task);
      auto ctx = prompt::retrieveContext(materialized, iri);
      auto text = prompt::assemblePrompt(ctx, instruction, expected, prefixes);
      auto client = makeClient(mock, aiUrl);
      auto result = prompt::generate(*client, text);
      if (!result.success) {
        std::cerr << "error: AI client failure: " << result.failureReason.value_or("unknown") << '\n';
        return kUserError;
      }
      std::optional<prompt::TraceLog> log;
      if (!o.traceLog.empty()) log.emplace(o.traceLog);
      auto record = prompt::linkTrace(kb, ctx, result, *kind, agents, log ? &*log : nullptr);
      saveKb(o, kb);
      if (o.json) {
        std::cout << Json{{"trace", api::trace(record)}, {"generation", api::generation(result)}}.dump(2)
                  << '\n';
      } else {
        Table rows{{"artifact", prefixes.render(record.artifact)},
                   {"kind", std::string(toString(record.kind))},
                   {"task", prefixes.render(record.generatedByTask)},
                   {"prompt digest", record.promptDigest},
                   {"created at", record.createdAt}};
        for (const auto& a : record.attributedTo) rows.push_back({"attributed to", prefixes.render(a)});
        printTable({"field", "value"}, rows);
        std::cout << '\n' << result.outputText << '\n';
      }
    } else if (traceCmd->parsed()) {
      auto iri = prefixes.resolve(artifact);
      auto p = prompt::provenanceOf(materialized, iri);
      if (!p) throw Error("unknown artifact " + iri.str());
      if (o.json) {
        std::cout << api::provenance(*p).dump(2) << '\n';
      } else {
        Table rows{{"artifact", prefixes.render(p->artifact)}};
        for (const auto& t : p->types) rows.push_back({"type", prefixes.render(t)});
        for (const auto& t : p->tasks) rows.push_back({"generated by", prefixes.render(t)});
        for (const auto& a : p->agents) rows.push_back({"attributed to", prefixes.render(a)});
        if (p->generatedAt) rows.push_back({"generated at", *p->generatedAt});
        printTable({"field", "value"}, rows);
      }
    } else if (scoreCmd->parsed()) {
      auto iri = prompt::resolveTask(kb, materialized, task);
      std::optional<Iri> art;
      if (scoreArtifact) art = prefixes.resolve(*scoreArtifact);
      auto s = prompt::scoreIndicators(materialized, iri, readFile(file), art);
      if (o.json) {
        std::cout << api::indicators(s).dump(2) << '\n';
      } else {
        auto frac = [](int a, int b) { return std::to_string(a) + "/" + std::to_string(b); };
        printTable({"indicator", "value"},
                   {{"categories explicit", frac(s.categoriesExplicit, s.categoriesTotal)},
                    {"context named", frac(s.contextNamed, s.contextTotal)},
                    {"resources named", frac(s.resourcesNamed, s.resourcesTotal)},
                    {"role-agent pairs named", frac(s.rolesNamed, s.rolesTotal)},
                    {"constraints named", frac(s.constraintsNamed, s.constraintsTotal)},
                    {"omitted items", std::to_string(s.omittedItems)},
                    {"provenance path", s.provenancePath ? "yes" : "no"}});
      }
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.line() << ':' << e.column() << ": " << e.message();
    if (!e.snippet().empty()) std::cerr << " near '" << e.snippet() << "'";
    std::cerr << '\n';
    return kUserError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}
