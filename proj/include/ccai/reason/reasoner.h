// Forward-chaining materialization, consistency validation and the
// competency-question suite.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccai/model/knowledge_base.h"
#include "ccai/sparql/evaluator.h"

namespace ccai {

// ABox plus (x rdf:type C') for every asserted (x rdf:type C) with C ⊑* C',
// plus the converse of every object triple whose property has a declared
// inverse. Domain and range axioms never add types.
Graph materialize(const KnowledgeBase& kb);

enum class ViolationKind { Disjointness, RangeKind, DomainMismatch, UnknownTerm };

std::string_view toString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<Triple> triples;
  std::string explanation;  // names the violated axiom
};

struct ValidationReport {
  std::vector<Violation> errors;    // Disjointness, RangeKind
  std::vector<Violation> warnings;  // DomainMismatch, UnknownTerm
  bool isConsistent() const { return errors.empty() && warnings.empty(); }
};

// Checks ABox triples only. Findings are sorted by kind, then by triples.
ValidationReport validate(const KnowledgeBase& kb);

enum class CqId { CQ1 = 1, CQ2, CQ3, CQ4, CQ5, CQ6 };

// Throws UnknownCq unless 1 <= n <= 6.
CqId cqFromNumber(int n);

// Canonical text of query 1..7 (1..6 are CQ1..CQ6; 7 is the prompt
// context query). Throws UnknownCq for other numbers.
std::string_view canonicalQuery(int box);

// Whether the CQ's canonical query has a VALUES input (CQ1..CQ4), and the
// variable it binds.
std::optional<std::string> cqInputVariable(CqId cq);

// Evaluates the canonical query against the materialized KB. `targets`, when
// given, replaces the VALUES rows of CQ1..CQ4; giving targets to CQ5/CQ6
// throws Error. Rows are sorted.
sparql::SolutionSequence runCq(const KnowledgeBase& kb, CqId cq,
                               const std::optional<std::vector<Term>>& targets = std::nullopt);
// Same against an already materialized graph.
sparql::SolutionSequence runCq(const Graph& materialized, CqId cq,
                               const std::optional<std::vector<Term>>& targets = std::nullopt);

}  // namespace ccai
