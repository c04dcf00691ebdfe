// The schema as data: classes, properties with their domains and ranges,
// subclass, disjointness and inverse axioms, derived from a TBox graph.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>

#include "ccai/rdf/graph.h"

namespace ccai {

struct ObjectPropertyInfo {
  std::set<Iri> domains;  // any one suffices
  std::set<Iri> ranges;
  friend bool operator==(const ObjectPropertyInfo&,
                         const ObjectPropertyInfo&) = default;
};

struct DatatypePropertyInfo {
  std::set<Iri> domains;  // any one suffices
  std::optional<Iri> range;
  friend bool operator==(const DatatypePropertyInfo&,
                         const DatatypePropertyInfo&) = default;
};

using IriPair = std::pair<Iri, Iri>;

class SchemaCatalog {
 public:
  std::set<Iri> classes;
  std::set<IriPair> subclassAxioms;  // (sub, super)
  std::map<Iri, ObjectPropertyInfo> objectProperties;
  std::map<Iri, DatatypePropertyInfo> datatypeProperties;
  std::set<IriPair> disjointPairs;  // unordered, stored with first < second
  std::set<IriPair> inversePairs;   // unordered, stored with first < second

  // Reads owl:Class / rdfs:Class, rdfs:subClassOf, owl:ObjectProperty,
  // owl:DatatypeProperty, rdfs:domain, rdfs:range, owl:inverseOf,
  // owl:disjointWith and owl:AllDisjointClasses member lists given as
  // rdf:first/rdf:rest chains.
  static SchemaCatalog fromGraph(const Graph& tbox);

  bool isClass(const Iri& iri) const { return classes.contains(iri); }
  bool isObjectProperty(const Iri& iri) const {
    return objectProperties.contains(iri);
  }
  bool isDatatypeProperty(const Iri& iri) const {
    return datatypeProperties.contains(iri);
  }

  // Reflexive-transitive superclasses of `cls`.
  std::set<Iri> superclasses(const Iri& cls) const;
  bool isSubclassOf(const Iri& sub, const Iri& super) const;

  std::optional<Iri> inverseOf(const Iri& property) const;

  friend bool operator==(const SchemaCatalog& a, const SchemaCatalog& b) {
    return a.classes == b.classes && a.subclassAxioms == b.subclassAxioms &&
           a.objectProperties == b.objectProperties &&
           a.datatypeProperties == b.datatypeProperties &&
           a.disjointPairs == b.disjointPairs &&
           a.inversePairs == b.inversePairs;
  }

 private:
  void computeClosure();

  std::map<Iri, std::set<Iri>> closure_;
};

IriPair unorderedPair(const Iri& a, const Iri& b);

}  // namespace ccai
