// Provenance linking of generated artifacts and the append-only trace log.

#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ccai/prompt/ai_client.h"

namespace ccai::prompt {

enum class ArtifactKind { AIDraftOutput, CollaborativeArtifact };

std::string_view toString(ArtifactKind kind);
// Accepts "AIDraftOutput"/"draft" and "CollaborativeArtifact"/"artifact".
std::optional<ArtifactKind> parseArtifactKind(std::string_view text);

struct TraceRecord {
  Iri artifact;
  ArtifactKind kind;
  Iri generatedByTask;
  std::vector<Iri> attributedTo;
  std::string promptDigest;
  std::string createdAt;  // ISO-8601 UTC, e.g. 2025-03-10T14:02:11Z
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

std::string isoUtc(Clock::time_point t);

class TraceLog {
 public:
  explicit TraceLog(std::filesystem::path path) : path_(std::move(path)) {}
  // Appends one JSON line and flushes.
  void append(const TraceRecord& record);
  std::vector<TraceRecord> readAll() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
};

std::string toJsonLine(const TraceRecord& record);
TraceRecord traceFromJsonLine(std::string_view line);

// Mints ccai:artifact-<first 12 hex of the prompt digest>, asserts its kind,
// prov:wasGeneratedBy ctx.task, prov:wasAttributedTo each agent and
// prov:generatedAtTime, then appends to `log` when given.
// Throws EmptyAttribution, GenerationFailed for an unsuccessful result, and
// TaskNotFound when ctx.task is not in the KB.
TraceRecord linkTrace(KnowledgeBase& kb, const PromptContext& ctx, const GenerationResult& result,
                      ArtifactKind kind, const std::vector<Iri>& attributedTo,
                      TraceLog* log = nullptr);

struct Provenance {
  Iri artifact;
  std::vector<Iri> types;
  std::vector<Iri> tasks;
  std::vector<Iri> agents;
  std::optional<std::string> generatedAt;
};

// Walks prov:wasGeneratedBy / prov:wasAttributedTo from `artifact`; nullopt
// when the artifact has no triples at all.
std::optional<Provenance> provenanceOf(const Graph& materialized, const Iri& artifact);

}  // namespace ccai::prompt
