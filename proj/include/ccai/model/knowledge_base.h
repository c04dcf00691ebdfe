// Knowledge base = built-in TBox + instance data, with a typed authoring
// layer and the bundled example fixtures.

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ccai/model/catalog.h"
#include "ccai/rdf/graph.h"

namespace ccai {

struct KnowledgeBase {
  Graph tbox;
  Graph abox;
  SchemaCatalog catalog;
  PrefixMap prefixes;

  // tbox ∪ abox.
  Graph combined() const;
};

struct InstanceRef {
  Iri iri;
  std::set<Iri> assertedTypes;
};

// The CCAI schema with an empty ABox. Deterministic.
KnowledgeBase builtinTbox();

// Asserts (iri rdf:type t) for every t. Throws UnknownClass before asserting
// anything if any type is not a catalog class.
InstanceRef createInstance(KnowledgeBase& kb, const Iri& iri,
                           const std::set<Iri>& types);

// Reference to an existing node with its asserted types (possibly none).
InstanceRef instanceRef(const KnowledgeBase& kb, const Iri& iri);

// Asserts an object-property triple and, for an inverse pair, its converse.
// Throws UnknownProperty.
Triple assertLink(KnowledgeBase& kb, const InstanceRef& subject,
                  const Iri& property, const InstanceRef& object);
// Same with an arbitrary object term; throws LiteralWhereIriExpected for a
// literal object.
Triple assertLink(KnowledgeBase& kb, const InstanceRef& subject,
                  const Iri& property, const Term& object);

// Asserts a datatype-property triple. Throws UnknownProperty, or
// DatatypeMismatch when the literal's datatype differs from the declared
// range (an xsd:string range also accepts language-tagged strings;
// rdfs:Literal accepts anything).
Triple assertValue(KnowledgeBase& kb, const InstanceRef& subject,
                   const Iri& property, const Literal& value);

// True for triples that belong in the TBox: typing as a class or property,
// and any triple whose predicate is in the rdfs or owl namespace.
bool isSchemaTriple(const Triple& triple);

// Parses Turtle and adds its triples: schema triples to the TBox (the catalog
// is re-derived), the rest to the ABox with blank nodes kept apart from
// existing ones. Returns the number of triples that were new.
std::size_t loadTurtle(KnowledgeBase& kb, std::string_view text);

// Raw Turtle of a bundled document: "ccai-tbox", "figure8" or "casestudy".
// Throws ConfigError for other names.
std::string_view bundledTurtle(std::string_view name);

struct BundledFixtures {
  KnowledgeBase figure8;
  KnowledgeBase casestudy;
};
BundledFixtures bundledFixtures();

// Built-in TBox plus the named fixture ("figure8" or "casestudy").
KnowledgeBase loadFixture(std::string_view name);

}  // namespace ccai
