// Task selection, query-based context retrieval, prompt assembly and the
// explicitness indicators for a prompt or output text.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccai/model/knowledge_base.h"

namespace ccai::prompt {

struct TaskSummary {
  Iri task;
  std::string name;              // empty when the task has no ccai:taskName
  std::optional<Iri> process;
};

// Every ccai:Task in the materialized KB, sorted by IRI.
std::vector<TaskSummary> listTasks(const Graph& materialized);

// Resolves an absolute IRI, a CURIE or an exact ccai:taskName to a task.
// Throws TaskNotFound or AmbiguousTaskName.
Iri resolveTask(const KnowledgeBase& kb, const Graph& materialized,
                std::string_view reference);

struct PromptContext {
  Iri task;
  std::string taskName;
  std::optional<Iri> process;
  std::optional<Iri> context;
  std::optional<std::string> domainLabel;
  std::vector<Iri> resources;                              // sorted
  std::vector<std::pair<Iri, Iri>> roleAgentPairs;         // (role, agent), sorted
  std::vector<std::pair<Iri, std::string>> constraints;    // (constraint, label), sorted
  std::optional<std::string> start;
  std::optional<std::string> end;
  std::optional<std::string> location;

  friend bool operator==(const PromptContext&, const PromptContext&) = default;
};

// Runs the task context query (process, context, resources, role-agent
// pairs) with ?task bound, then the context attribute and constraint queries
// for the retrieved context, all over the materialized KB. When several
// processes or contexts are linked the smallest IRI is kept.
PromptContext retrieveContext(const Graph& materialized, const Iri& task);
PromptContext retrieveContext(const KnowledgeBase& kb, std::string_view taskReference);

enum class PromptField { Task, Context, Resources, RolesAgents, Constraints, ExpectedOutput, Instruction };

std::string_view toString(PromptField field);

struct PromptText {
  std::string rendered;
  std::vector<PromptField> fieldsPresent;  // in rendering order

  // Lowercase hex SHA-256 of `rendered`.
  std::string digest() const;
  friend bool operator==(const PromptText&, const PromptText&) = default;
};

// Sections in fixed order: Task, Context, Resources, Team & Roles,
// Constraints, Expected Output, Instruction. Empty sections are left out.
// Throws EmptyInstruction for an empty or blank instruction.
PromptText assemblePrompt(const PromptContext& ctx, std::string_view instruction,
                          const std::optional<std::string>& expectedOutput = std::nullopt,
                          const PrefixMap& prefixes = standardPrefixes());

std::string sha256Hex(std::string_view data);

// Part after the last '#' or '/'.
std::string_view localName(const Iri& iri);

struct IndicatorScore {
  int categoriesExplicit = 0;
  int categoriesTotal = 4;
  int contextNamed = 0;
  int contextTotal = 0;
  int resourcesNamed = 0;
  int resourcesTotal = 0;
  int rolesNamed = 0;  // role-agent pairs with both sides named
  int rolesTotal = 0;
  int constraintsNamed = 0;
  int constraintsTotal = 0;
  int omittedItems = 0;
  bool provenancePath = false;
};

// Item totals come from the KB. An item is named when its local name or its
// label occurs verbatim in `text`; a category with no items counts as
// explicit. `artifact`, when given, enables the provenance check: the artifact
// must be generated by the task and attributed to at least one agent.
IndicatorScore scoreIndicators(const KnowledgeBase& kb, const Iri& task, std::string_view text,
                               const std::optional<Iri>& artifact = std::nullopt);
IndicatorScore scoreIndicators(const Graph& materialized, const Iri& task, std::string_view text,
                               const std::optional<Iri>& artifact = std::nullopt);

}  // namespace ccai::prompt
