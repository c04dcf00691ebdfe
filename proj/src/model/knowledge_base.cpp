#include "ccai/model/knowledge_base.h"

#include "ccai/error.h"
#include "ccai/rdf/vocab.h"
#include "ccai/turtle/turtle.h"
#include "model/bundled_data.h"

namespace ccai {

Graph KnowledgeBase::combined() const {
  Graph g = tbox;
  g.insertAll(abox);
  g.prefixes().mergeFrom(prefixes);
  return g;
}

bool isSchemaTriple(const Triple& triple) {
  const Iri& p = triple.predicate();
  if (vocab::inNamespace(p, vocab::kRdfs) || vocab::inNamespace(p, vocab::kOwl)) {
    return true;
  }
  if (p == vocab::rdfType() && triple.object().isIri()) {
    const Iri& o = triple.object().iri();
    return vocab::inNamespace(o, vocab::kOwl) || vocab::inNamespace(o, vocab::kRdfs);
  }
  return false;
}

namespace {

void addGraph(KnowledgeBase& kb, const Graph& g, std::size_t& added) {
  Graph schema;
  Graph data;
  for (const auto& t : g.triples()) (isSchemaTriple(t) ? schema : data).insert(t);
  // Blank-node members of schema lists travel with the schema.
  for (const auto& t : data.match(std::nullopt, std::nullopt, std::nullopt)) {
    if (t.subject().isBlank() &&
        (t.predicate() == vocab::rdf("first") || t.predicate() == vocab::rdf("rest"))) {
      data.remove(t);
      schema.insert(t);
    }
  }
  if (!schema.empty()) {
    std::size_t before = kb.tbox.size();
    kb.tbox.insertAll(schema);
    added += kb.tbox.size() - before;
    kb.catalog = SchemaCatalog::fromGraph(kb.tbox);
  }
  if (!data.empty()) {
    std::size_t before = kb.abox.size();
    kb.abox = merge(kb.abox, data);
    added += kb.abox.size() - before;
  }
}

KnowledgeBase parseBundled(std::string_view name) {
  KnowledgeBase kb;
  auto doc = parseTurtle(bundledTurtle(name));
  kb.prefixes = standardPrefixes();
  kb.prefixes.mergeFrom(doc.prefixes);
  std::size_t added = 0;
  addGraph(kb, doc.graph, added);
  return kb;
}

}  // namespace

KnowledgeBase builtinTbox() {
  static const KnowledgeBase cached = [] {
    auto kb = parseBundled("ccai-tbox");
    kb.tbox.prefixes() = kb.prefixes;
    return kb;
  }();
  return cached;
}

InstanceRef createInstance(KnowledgeBase& kb, const Iri& iri,
                           const std::set<Iri>& types) {
  for (const auto& t : types) {
    if (!kb.catalog.isClass(t)) throw UnknownClass("unknown class " + t.str());
  }
  for (const auto& t : types) kb.abox.insert(Triple(iri, vocab::rdfType(), t));
  return instanceRef(kb, iri);
}

InstanceRef instanceRef(const KnowledgeBase& kb, const Iri& iri) {
  InstanceRef ref{iri, {}};
  kb.abox.forEachMatch(Term(iri), vocab::rdfType(), std::nullopt,
                       [&](const Triple& t) {
                         if (t.object().isIri()) ref.assertedTypes.insert(t.object().iri());
                       });
  return ref;
}

Triple assertLink(KnowledgeBase& kb, const InstanceRef& subject,
                  const Iri& property, const InstanceRef& object) {
  return assertLink(kb, subject, property, Term(object.iri));
}

Triple assertLink(KnowledgeBase& kb, const InstanceRef& subject,
                  const Iri& property, const Term& object) {
  if (!kb.catalog.isObjectProperty(property)) {
    throw UnknownProperty("not an object property: " + property.str());
  }
  if (object.isLiteral()) {
    throw LiteralWhereIriExpected("literal object for object property " +
                                  property.str());
  }
  Triple triple(subject.iri, property, object);
  kb.abox.insert(triple);
  if (auto inverse = kb.catalog.inverseOf(property); inverse && object.isIri()) {
    kb.abox.insert(Triple(object, *inverse, subject.iri));
  }
  return triple;
}

Triple assertValue(KnowledgeBase& kb, const InstanceRef& subject,
                   const Iri& property, const Literal& value) {
  auto it = kb.catalog.datatypeProperties.find(property);
  if (it == kb.catalog.datatypeProperties.end()) {
    throw UnknownProperty("not a datatype property: " + property.str());
  }
  if (const auto& range = it->second.range) {
    bool ok = *range == vocab::rdfs("Literal") || value.datatype() == *range ||
              (*range == vocab::xsdString() &&
               value.datatype() == vocab::rdfLangString());
    if (!ok) {
      throw DatatypeMismatch(property.str() + " expects " + range->str() +
                             ", got " + value.datatype().str());
    }
  }
  Triple triple(subject.iri, property, value);
  kb.abox.insert(triple);
  return triple;
}

std::size_t loadTurtle(KnowledgeBase& kb, std::string_view text) {
  auto doc = parseTurtle(text);
  kb.prefixes.mergeFrom(doc.prefixes);
  std::size_t added = 0;
  addGraph(kb, doc.graph, added);
  return added;
}

std::string_view bundledTurtle(std::string_view name) {
  if (name == "ccai-tbox") return detail::kTboxTurtle;
  if (name == "figure8") return detail::kFigure8Turtle;
  if (name == "casestudy") return detail::kCasestudyTurtle;
  throw ConfigError("unknown bundled document '" + std::string(name) +
                    "' (expected figure8 or casestudy)");
}

KnowledgeBase loadFixture(std::string_view name) {
  if (name != "figure8" && name != "casestudy") {
    throw ConfigError("unknown fixture '" + std::string(name) +
                      "' (expected figure8 or casestudy)");
  }
  KnowledgeBase kb = builtinTbox();
  loadTurtle(kb, bundledTurtle(name));
  return kb;
}

BundledFixtures bundledFixtures() {
  return {loadFixture("figure8"), loadFixture("casestudy")};
}

}  // namespace ccai
