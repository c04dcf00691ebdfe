// Turtle subset reader/writer and canonical N-Triples export.
//
// Supported input: @prefix/@base (and the SPARQL-style PREFIX/BASE forms),
// `a`, predicate lists with `;`, object lists with `,`, <IRIREF>, prefixed
// names, `_:label` and `[ ... ]` blank nodes, short and long string literals
// with `^^` datatypes or `@lang` tags, and integer/decimal/double/boolean
// shorthand. Collections `( ... )` are rejected with a ParseError.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ccai/rdf/graph.h"

namespace ccai {

struct TurtleDocument {
  Graph graph;  // graph.prefixes() mirrors `prefixes`
  PrefixMap prefixes;
  std::optional<Iri> base;
};

// Throws ParseError (with 1-based line/column) or UnknownPrefix.
TurtleDocument parseTurtle(std::string_view text,
                           std::optional<Iri> base = std::nullopt);

// Deterministic Turtle: subjects sorted, predicates sorted with rdf:type
// first (rendered as `a`), objects sorted. Emits the document's prefixes plus
// any standard prefix (ccai, prov, foaf, rdf, rdfs, owl, xsd) whose namespace
// the graph uses.
std::string serializeTurtle(const TurtleDocument& doc);
std::string serializeTurtle(const Graph& graph);

// One triple per line, sorted bytewise, LF line endings.
std::string exportNTriples(const Graph& graph);

}  // namespace ccai
