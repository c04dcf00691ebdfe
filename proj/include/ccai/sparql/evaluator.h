// Query evaluation over a single default graph.
//
// Semantics: a BGP joins by compatible merge; OPTIONAL left-joins against the
// solutions accumulated from the preceding elements of its group; UNION is
// bag concatenation of its arms, then joined; VALUES joins with the inline
// table. Projection is followed by DISTINCT when requested. Row order is
// unspecified; call sortRows() for a deterministic order.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccai/rdf/graph.h"
#include "ccai/sparql/query.h"

namespace ccai::sparql {

// One solution: cells align with SolutionSequence::variables; an empty cell
// is an unbound variable.
using Binding = std::vector<std::optional<Term>>;

struct SolutionSequence {
  std::vector<std::string> variables;
  std::vector<Binding> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }

  // Column index of `variable`, or nullopt.
  std::optional<std::size_t> column(std::string_view variable) const;

  // Lexicographic by cell; unbound sorts first.
  void sortRows();
  // Removes rows equal on every column, keeping first occurrences.
  void removeDuplicates();
};

SolutionSequence evaluate(const Graph& graph, const Query& query);

// Parse + evaluate convenience.
SolutionSequence evaluate(const Graph& graph, std::string_view queryText);

}  // namespace ccai::sparql
