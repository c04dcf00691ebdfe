#include "ccai/prompt/trace.h"

#include <ctime>
#include <fstream>
#include <json.hpp>
#include <set>

#include "ccai/error.h"
#include "ccai/rdf/vocab.h"

namespace ccai::prompt {

std::string_view toString(ArtifactKind kind) {
  return kind == ArtifactKind::AIDraftOutput ? "AIDraftOutput" : "CollaborativeArtifact";
}

std::optional<ArtifactKind> parseArtifactKind(std::string_view text) {
  if (text == "AIDraftOutput" || text == "draft") return ArtifactKind::AIDraftOutput;
  if (text == "CollaborativeArtifact" || text == "artifact") {
    return ArtifactKind::CollaborativeArtifact;
  }
  return std::nullopt;
}

std::string isoUtc(Clock::time_point t) {
  std::time_t secs = Clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string toJsonLine(const TraceRecord& r) {
  nlohmann::json agents = nlohmann::json::array();
  for (const auto& a : r.attributedTo) agents.push_back(a.str());
  nlohmann::json j = {{"artifact", r.artifact.str()},
                      {"kind", toString(r.kind)},
                      {"generated_by_task", r.generatedByTask.str()},
                      {"attributed_to", agents},
                      {"prompt_digest", r.promptDigest},
                      {"created_at", r.createdAt}};
  return j.dump();
}

TraceRecord traceFromJsonLine(std::string_view line) {
  auto j = nlohmann::json::parse(line);
  auto kind = parseArtifactKind(j.at("kind").get<std::string>());
  if (!kind) throw Error("unknown artifact kind in trace log");
  TraceRecord r{Iri(j.at("artifact").get<std::string>()),
                *kind,
                Iri(j.at("generated_by_task").get<std::string>()),
                {},
                j.at("prompt_digest").get<std::string>(),
                j.at("created_at").get<std::string>()};
  for (const auto& a : j.at("attributed_to")) r.attributedTo.emplace_back(a.get<std::string>());
  return r;
}

void TraceLog::append(const TraceRecord& record) {
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot open trace log " + path_.string());
  out << toJsonLine(record) << '\n';
  out.flush();
  if (!out) throw Error("cannot write trace log " + path_.string());
}

std::vector<TraceRecord> TraceLog::readAll() const {
  std::lock_guard lock(mutex_);
  std::vector<TraceRecord> out;
  std::ifstream in(path_, std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(traceFromJsonLine(line));
  }
  return out;
}

TraceRecord linkTrace(KnowledgeBase& kb, const PromptContext& ctx, const GenerationResult& result,
                      ArtifactKind kind, const std::vector<Iri>& attributedTo, TraceLog* log) {
  if (attributedTo.empty()) throw EmptyAttribution("at least one agent must be attributed");
  if (!result.success) {
    throw GenerationFailed("generation failed: " + result.failureReason.value_or("unknown"));
  }
  if (kb.abox.match(ctx.task, std::nullopt, std::nullopt).empty()) {
    throw TaskNotFound("task not in knowledge base: " + ctx.task.str());
  }

  TraceRecord record{vocab::ccai("artifact-" + result.promptDigest.substr(0, 12)),
                     kind,
                     ctx.task,
                     {},
                     result.promptDigest,
                     isoUtc(result.finished)};
  std::set<Iri> seen;
  for (const auto& a : attributedTo) {
    if (seen.insert(a).second) record.attributedTo.push_back(a);
  }

  auto artifact = createInstance(kb, record.artifact, {vocab::ccai(toString(kind))});
  auto task = instanceRef(kb, ctx.task);
  assertLink(kb, artifact, vocab::prov("wasGeneratedBy"), task);
  for (const auto& a : record.attributedTo) {
    assertLink(kb, artifact, vocab::prov("wasAttributedTo"), instanceRef(kb, a));
  }
  kb.abox.insert(Triple(record.artifact, vocab::prov("generatedAtTime"),
                        Literal(record.createdAt, vocab::xsd("dateTime"))));
  if (log) log->append(record);
  return record;
}

std::optional<Provenance> provenanceOf(const Graph& g, const Iri& artifact) {
  if (g.match(Term(artifact), std::nullopt, std::nullopt).empty()) return std::nullopt;
  Provenance p{artifact, {}, {}, {}, {}};
  for (const auto& t : g.match(Term(artifact), std::nullopt, std::nullopt)) {
    const auto& pred = t.predicate();
    if (!t.object().isLiteral()) {
      if (!t.object().isIri()) continue;
      if (pred == vocab::rdfType()) p.types.push_back(t.object().iri());
      if (pred == vocab::prov("wasGeneratedBy")) p.tasks.push_back(t.object().iri());
      if (pred == vocab::prov("wasAttributedTo")) p.agents.push_back(t.object().iri());
    } else if (pred == vocab::prov("generatedAtTime")) {
      p.generatedAt = t.object().literal().lexical();
    }
  }
  return p;
}

}  // namespace ccai::prompt
