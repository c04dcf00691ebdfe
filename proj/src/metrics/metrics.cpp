#include "ccai/metrics/metrics.h"

#include <cstdio>
#include <set>

#include "ccai/model/catalog.h"
#include "ccai/rdf/vocab.h"

namespace ccai::metrics {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

bool isSchemaVocabulary(const Iri& iri) {
  return vocab::inNamespace(iri, vocab::kRdf) || vocab::inNamespace(iri, vocab::kRdfs) ||
         vocab::inNamespace(iri, vocab::kOwl);
}

std::set<Iri> subjectsTyped(const Graph& g, const Iri& type) {
  std::set<Iri> out;
  for (const auto& t : g.match(std::nullopt, vocab::rdfType(), Term(type))) {
    if (t.subject().isIri()) out.insert(t.subject().iri());
  }
  return out;
}

std::set<Iri> declaredClasses(const Graph& g) {
  auto classes = subjectsTyped(g, vocab::owl("Class"));
  for (const auto& c : subjectsTyped(g, vocab::rdfs("Class"))) classes.insert(c);
  return classes;
}

}  // namespace

BaseCounts countBase(const Graph& g) {
  BaseCounts c;
  c.classes = declaredClasses(g).size();

  std::set<IriPair> sub;
  for (const auto& t : g.match(std::nullopt, vocab::rdfs("subClassOf"), std::nullopt)) {
    if (t.subject().isIri() && t.object().isIri()) {
      sub.emplace(t.subject().iri(), t.object().iri());
    }
  }
  c.subclassAxioms = sub.size();

  auto objectProps = subjectsTyped(g, vocab::owl("ObjectProperty"));
  auto dataProps = subjectsTyped(g, vocab::owl("DatatypeProperty"));
  c.objectProperties = objectProps.size();
  c.datatypeProperties = dataProps.size();

  std::set<IriPair> inverse;
  for (const auto& t : g.match(std::nullopt, vocab::owl("inverseOf"), std::nullopt)) {
    if (t.subject().isIri() && t.object().isIri()) {
      inverse.insert(unorderedPair(t.subject().iri(), t.object().iri()));
    }
  }
  c.inverseAxioms = inverse.size();

  std::set<IriPair> disjoint;
  for (const auto& t : g.match(std::nullopt, vocab::owl("disjointWith"), std::nullopt)) {
    if (t.subject().isIri() && t.object().isIri()) {
      disjoint.insert(unorderedPair(t.subject().iri(), t.object().iri()));
    }
  }
  c.disjointAxioms = disjoint.size() +
                     g.match(std::nullopt, vocab::rdfType(),
                             Term(vocab::owl("AllDisjointClasses")))
                         .size();

  std::set<Term> individuals;
  for (const auto& t : g.match(std::nullopt, vocab::rdfType(), std::nullopt)) {
    if (t.object().isIri() && !isSchemaVocabulary(t.object().iri())) {
      individuals.insert(t.subject());
      ++c.classAssertions;
    }
  }
  c.individuals = individuals.size();

  for (const auto& t : g.triples()) {
    if (objectProps.contains(t.predicate())) ++c.objectAssertions;
    if (dataProps.contains(t.predicate())) ++c.dataAssertions;
  }
  return c;
}

std::size_t instantiatedClasses(const Graph& g) {
  std::size_t n = 0;
  for (const auto& cls : declaredClasses(g)) {
    if (!g.match(std::nullopt, vocab::rdfType(), Term(cls)).empty()) ++n;
  }
  return n;
}

MetricReport computeRichness(const BaseCounts& base, std::size_t instantiated,
                             std::size_t nonInheritance) {
  MetricReport r;
  r.base = base;
  r.instantiatedClasses = instantiated;
  r.nonInheritanceRelations = nonInheritance;
  r.attributeRichness = ratio(base.datatypeProperties, base.classes);
  r.inheritanceRichness = ratio(base.subclassAxioms, base.classes);
  r.relationshipRichness = ratio(nonInheritance, nonInheritance + base.subclassAxioms);
  r.inverseRatio = ratio(base.inverseAxioms, base.objectProperties);
  r.classRichness = ratio(instantiated, base.classes);
  return r;
}

MetricReport measure(const Graph& ontology) {
  auto base = countBase(ontology);
  auto report = computeRichness(base, instantiatedClasses(ontology), base.objectProperties);
  for (const auto& [label, n] :
       {std::pair<std::string, std::size_t>{"object properties", base.objectProperties},
        {"object + datatype properties", base.objectProperties + base.datatypeProperties}}) {
    report.relationshipCandidates.push_back(
        {label, n, ratio(n, n + base.subclassAxioms)});
  }
  return report;
}

std::string formatRatio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

}  // namespace ccai::metrics
