#include "ccai/model/catalog.h"

#include "ccai/rdf/vocab.h"

namespace ccai {

IriPair unorderedPair(const Iri& a, const Iri& b) {
  return a < b ? IriPair{a, b} : IriPair{b, a};
}

namespace {

std::vector<Iri> listMembers(const Graph& g, const Term& head) {
  static const Iri first = vocab::rdf("first");
  static const Iri rest = vocab::rdf("rest");
  static const Iri nil = vocab::rdf("nil");
  std::vector<Iri> out;
  std::set<Term> seen;
  Term node = head;
  while (!(node.isIri() && node.iri() == nil) && seen.insert(node).second) {
    for (const auto& t : g.match(node, first, std::nullopt)) {
      if (t.object().isIri()) out.push_back(t.object().iri());
    }
    auto next = g.match(node, rest, std::nullopt);
    if (next.empty()) break;
    node = next.front().object();
  }
  return out;
}

}  // namespace

SchemaCatalog SchemaCatalog::fromGraph(const Graph& tbox) {
  const Iri& type = vocab::rdfType();
  const Iri owlClass = vocab::owl("Class");
  const Iri rdfsClass = vocab::rdfs("Class");
  const Iri objectProperty = vocab::owl("ObjectProperty");
  const Iri datatypeProperty = vocab::owl("DatatypeProperty");
  const Iri subClassOf = vocab::rdfs("subClassOf");
  const Iri domain = vocab::rdfs("domain");
  const Iri range = vocab::rdfs("range");
  const Iri inverseOf = vocab::owl("inverseOf");
  const Iri disjointWith = vocab::owl("disjointWith");
  const Iri allDisjoint = vocab::owl("AllDisjointClasses");
  const Iri members = vocab::owl("members");

  SchemaCatalog c;
  for (const auto& t : tbox.match(std::nullopt, type, std::nullopt)) {
    if (!t.subject().isIri() || !t.object().isIri()) continue;
    const Iri& s = t.subject().iri();
    const Iri& o = t.object().iri();
    if (o == owlClass || o == rdfsClass) c.classes.insert(s);
    if (o == objectProperty) c.objectProperties[s];
    if (o == datatypeProperty) c.datatypeProperties[s];
  }
  for (const auto& t : tbox.match(std::nullopt, subClassOf, std::nullopt)) {
    if (!t.subject().isIri() || !t.object().isIri()) continue;
    c.subclassAxioms.emplace(t.subject().iri(), t.object().iri());
    c.classes.insert(t.subject().iri());
    c.classes.insert(t.object().iri());
  }
  for (const auto& [pred, isDomain] : {std::pair{domain, true}, std::pair{range, false}}) {
    for (const auto& t : tbox.match(std::nullopt, pred, std::nullopt)) {
      if (!t.subject().isIri() || !t.object().isIri()) continue;
      const Iri& p = t.subject().iri();
      if (auto it = c.objectProperties.find(p); it != c.objectProperties.end()) {
        (isDomain ? it->second.domains : it->second.ranges).insert(t.object().iri());
      } else if (auto dt = c.datatypeProperties.find(p);
                 dt != c.datatypeProperties.end()) {
        if (isDomain) {
          dt->second.domains.insert(t.object().iri());
        } else {
          dt->second.range = t.object().iri();
        }
      }
    }
  }
  for (const auto& t : tbox.match(std::nullopt, inverseOf, std::nullopt)) {
    if (t.subject().isIri() && t.object().isIri()) {
      c.inversePairs.insert(unorderedPair(t.subject().iri(), t.object().iri()));
    }
  }
  for (const auto& t : tbox.match(std::nullopt, disjointWith, std::nullopt)) {
    if (t.subject().isIri() && t.object().isIri()) {
      c.disjointPairs.insert(unorderedPair(t.subject().iri(), t.object().iri()));
    }
  }
  for (const auto& t : tbox.match(std::nullopt, type, Term(allDisjoint))) {
    for (const auto& m : tbox.match(t.subject(), members, std::nullopt)) {
      auto list = listMembers(tbox, m.object());
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          c.disjointPairs.insert(unorderedPair(list[i], list[j]));
        }
      }
    }
  }
  c.computeClosure();
  return c;
}

void SchemaCatalog::computeClosure() {
  std::map<Iri, std::set<Iri>> direct;
  for (const auto& [sub, super] : subclassAxioms) direct[sub].insert(super);
  closure_.clear();
  for (const auto& cls : classes) {
    std::set<Iri> seen{cls};
    std::vector<Iri> stack{cls};
    while (!stack.empty()) {
      Iri next = stack.back();
      stack.pop_back();
      auto it = direct.find(next);
      if (it == direct.end()) continue;
      for (const auto& super : it->second) {
        if (seen.insert(super).second) stack.push_back(super);
      }
    }
    closure_.emplace(cls, std::move(seen));
  }
}

std::set<Iri> SchemaCatalog::superclasses(const Iri& cls) const {
  auto it = closure_.find(cls);
  if (it == closure_.end()) return {cls};
  return it->second;
}

bool SchemaCatalog::isSubclassOf(const Iri& sub, const Iri& super) const {
  if (sub == super) return true;
  auto it = closure_.find(sub);
  return it != closure_.end() && it->second.contains(super);
}

std::optional<Iri> SchemaCatalog::inverseOf(const Iri& property) const {
  for (const auto& [a, b] : inversePairs) {
    if (a == property) return b;
    if (b == property) return a;
  }
  return std::nullopt;
}

}  // namespace ccai
