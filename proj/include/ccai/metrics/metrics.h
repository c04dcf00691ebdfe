// Ontology size counts and schema-level richness indicators.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ccai/rdf/graph.h"

namespace ccai::metrics {

struct BaseCounts {
  std::size_t classes = 0;
  std::size_t subclassAxioms = 0;  // distinct asserted (sub, super) pairs
  std::size_t objectProperties = 0;
  std::size_t datatypeProperties = 0;
  std::size_t inverseAxioms = 0;
  std::size_t disjointAxioms = 0;
  std::size_t individuals = 0;
  std::size_t classAssertions = 0;
  std::size_t objectAssertions = 0;
  std::size_t dataAssertions = 0;
  friend bool operator==(const BaseCounts&, const BaseCounts&) = default;
};

// Labelled relationship-richness variant for one choice of numerator.
struct RelationshipTally {
  std::string label;
  std::size_t nonInheritanceRelations = 0;
  double relationshipRichness = 0.0;
};

struct MetricReport {
  BaseCounts base;
  std::size_t instantiatedClasses = 0;
  std::size_t nonInheritanceRelations = 0;
  double attributeRichness = 0.0;
  double inheritanceRichness = 0.0;
  double relationshipRichness = 0.0;
  double inverseRatio = 0.0;
  double classRichness = 0.0;
  // Relationship richness depends on what is counted as a relation, so it is
  // reported for several tallies and never treated as a fixed target.
  bool relationshipRichnessInformative = true;
  std::vector<RelationshipTally> relationshipCandidates;
};

// Counts from explicit triples only. Individuals are subjects of rdf:type
// whose object lies outside the rdf, rdfs and owl vocabularies.
BaseCounts countBase(const Graph& ontology);

// Declared classes with at least one direct rdf:type instance.
std::size_t instantiatedClasses(const Graph& ontology);

// AR = datatype/classes, IR = subclass/classes,
// RR = n/(n + subclass), inverse = inverse/object properties,
// CR = instantiated/classes. Any 0/0 is 0.
MetricReport computeRichness(const BaseCounts& base, std::size_t instantiatedClasses,
                             std::size_t nonInheritanceRelations);

// countBase + instantiatedClasses + computeRichness with object properties as
// the relation tally, and candidate tallies for object properties and for
// object plus datatype properties.
MetricReport measure(const Graph& ontology);

// Fraction rendered with three decimals, e.g. "0.184".
std::string formatRatio(double value);

}  // namespace ccai::metrics
