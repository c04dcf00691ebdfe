// Test-only generators and reference implementations.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ccai/rdf/graph.h"
#include "ccai/sparql/evaluator.h"
#include "ccai/sparql/query.h"

namespace ccai::testing {

using Rng = std::mt19937_64;

struct GraphShape {
  int nodes = 15;
  int predicates = 4;
  int maxTriples = 500;
  double blankSubjects = 0.1;
  double literalObjects = 0.25;
};

// Vocabulary: <http://ex.org/nK>, <http://ex.org/pK>, blank nodes _:bK and a
// handful of plain, typed and language-tagged literals.
Graph randomGraph(Rng& rng, const GraphShape& shape = {});
Iri exNode(int k);
Iri exPredicate(int k);

// A query in the supported subset over the randomGraph vocabulary.
std::string randomQuery(Rng& rng, const GraphShape& shape = {});

// Naive reference evaluation: every triple pattern is a full scan, joins are
// nested loops over compatible mappings. Rows are sorted.
std::vector<sparql::Binding> bruteForce(const Graph& graph, const sparql::Query& query);

std::vector<sparql::Binding> sortedRows(sparql::SolutionSequence s);

// Exhaustive search over blank-node bijections; only for small graphs.
bool bruteIsomorphic(const Graph& a, const Graph& b);

// Test data directory (the repository data/ folder).
std::string dataPath(const std::string& relative);
std::string readText(const std::string& path);

}  // namespace ccai::testing
