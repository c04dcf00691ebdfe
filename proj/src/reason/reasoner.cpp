#include "ccai/reason/reasoner.h"

#include <algorithm>
#include <map>

#include "ccai/error.h"
#include "ccai/rdf/vocab.h"
#include "ccai/sparql/parser.h"
#include "model/bundled_data.h"

namespace ccai {

Graph materialize(const KnowledgeBase& kb) {
  const SchemaCatalog& catalog = kb.catalog;
  Graph out = kb.abox;
  out.prefixes() = kb.prefixes;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Triple> pending;
    for (const auto& t : out.triples()) {
      const Iri& p = t.predicate();
      if (p == vocab::rdfType() && t.object().isIri()) {
        for (const auto& super : catalog.superclasses(t.object().iri())) {
          pending.emplace_back(t.subject(), p, super);
        }
      } else if (!t.object().isLiteral()) {
        if (auto inverse = catalog.inverseOf(p)) {
          pending.emplace_back(t.object(), *inverse, t.subject());
        }
      }
    }
    for (const auto& t : pending) changed |= out.insert(t);
  }
  return out;
}

std::string_view toString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Disjointness: return "Disjointness";
    case ViolationKind::RangeKind: return "RangeKind";
    case ViolationKind::DomainMismatch: return "DomainMismatch";
    case ViolationKind::UnknownTerm: return "UnknownTerm";
  }
  return "?";
}

namespace {

std::string curie(const KnowledgeBase& kb, const Iri& iri) {
  return kb.prefixes.render(iri);
}

std::string joinCuries(const KnowledgeBase& kb, const std::set<Iri>& iris) {
  std::string out;
  for (const auto& i : iris) {
    if (!out.empty()) out += " or ";
    out += curie(kb, i);
  }
  return out;
}

bool rangeAccepts(const Iri& range, const Literal& value) {
  return range == vocab::rdfs("Literal") || value.datatype() == range ||
         (range == vocab::xsdString() && value.datatype() == vocab::rdfLangString());
}

void sortFindings(std::vector<Violation>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.triples < b.triples;
  });
}

}  // namespace

ValidationReport validate(const KnowledgeBase& kb) {
  const SchemaCatalog& catalog = kb.catalog;
  ValidationReport report;
  Graph inferred = materialize(kb);

  // Disjointness: one error per (individual, disjoint pair).
  std::map<Term, std::set<Iri>> types;
  for (const auto& t : inferred.match(std::nullopt, vocab::rdfType(), std::nullopt)) {
    if (t.object().isIri()) types[t.subject()].insert(t.object().iri());
  }
  for (const auto& [node, classes] : types) {
    for (const auto& [a, b] : catalog.disjointPairs) {
      if (classes.contains(a) && classes.contains(b)) {
        report.errors.push_back(
            {ViolationKind::Disjointness,
             {Triple(node, vocab::rdfType(), a), Triple(node, vocab::rdfType(), b)},
             "individual typed with both " + curie(kb, a) + " and " + curie(kb, b) +
                 ", which violates " + curie(kb, a) + " owl:disjointWith " +
                 curie(kb, b)});
      }
    }
  }

  for (const auto& t : kb.abox.triples()) {
    const Iri& p = t.predicate();
    if (p == vocab::rdfType()) {
      if (t.object().isIri() && vocab::inNamespace(t.object().iri(), vocab::kCcai) &&
          !catalog.isClass(t.object().iri())) {
        report.warnings.push_back({ViolationKind::UnknownTerm, {t},
                                   curie(kb, t.object().iri()) +
                                       " is not a class of the schema"});
      }
      continue;
    }

    const std::set<Iri>* domains = nullptr;
    if (auto op = catalog.objectProperties.find(p); op != catalog.objectProperties.end()) {
      domains = &op->second.domains;
      if (t.object().isLiteral()) {
        report.errors.push_back({ViolationKind::RangeKind, {t},
                                 curie(kb, p) +
                                     " is an owl:ObjectProperty but the object is a literal"});
      }
    } else if (auto dp = catalog.datatypeProperties.find(p);
               dp != catalog.datatypeProperties.end()) {
      domains = &dp->second.domains;
      if (!t.object().isLiteral()) {
        report.errors.push_back({ViolationKind::RangeKind, {t},
                                 curie(kb, p) +
                                     " is an owl:DatatypeProperty but the object is not a literal"});
      } else if (dp->second.range &&
                 !rangeAccepts(*dp->second.range, t.object().literal())) {
        report.errors.push_back(
            {ViolationKind::RangeKind, {t},
             curie(kb, p) + " rdfs:range " + curie(kb, *dp->second.range) +
                 " does not admit datatype " + curie(kb, t.object().literal().datatype())});
      }
    } else if (vocab::inNamespace(p, vocab::kCcai)) {
      report.warnings.push_back({ViolationKind::UnknownTerm, {t},
                                 curie(kb, p) + " is not a property of the schema"});
    }

    if (domains && !domains->empty()) {
      auto asserted = kb.abox.match(t.subject(), vocab::rdfType(), std::nullopt);
      if (asserted.empty()) continue;
      bool ok = false;
      for (const auto& a : asserted) {
        if (!a.object().isIri()) continue;
        for (const auto& d : *domains) {
          if (catalog.isSubclassOf(a.object().iri(), d)) ok = true;
        }
      }
      if (!ok) {
        report.warnings.push_back(
            {ViolationKind::DomainMismatch, {t},
             "no asserted type of the subject falls under " + curie(kb, p) +
                 " rdfs:domain " + joinCuries(kb, *domains)});
      }
    }
  }
  sortFindings(report.errors);
  sortFindings(report.warnings);
  return report;
}

CqId cqFromNumber(int n) {
  if (n < 1 || n > 6) {
    throw UnknownCq("unknown competency question " + std::to_string(n) +
                    " (expected 1..6)");
  }
  return static_cast<CqId>(n);
}

std::string_view canonicalQuery(int box) {
  if (box < 1 || box > 7) {
    throw UnknownCq("unknown canonical query " + std::to_string(box) + " (expected 1..7)");
  }
  return detail::kCanonicalQueries[box - 1];
}

namespace {

sparql::ValuesPattern* topLevelValues(sparql::Query& q) {
  for (auto& e : q.pattern.elements) {
    if (auto* v = std::get_if<sparql::ValuesPattern>(&e)) return v;
  }
  return nullptr;
}

}  // namespace

std::optional<std::string> cqInputVariable(CqId cq) {
  auto query = sparql::parseQuery(canonicalQuery(static_cast<int>(cq)));
  if (auto* v = topLevelValues(query); v && v->variables.size() == 1) {
    return v->variables.front().name;
  }
  return std::nullopt;
}

sparql::SolutionSequence runCq(const Graph& materialized, CqId cq,
                               const std::optional<std::vector<Term>>& targets) {
  int n = static_cast<int>(cq);
  if (n < 1 || n > 6) throw UnknownCq("unknown competency question");
  auto query = sparql::parseQuery(canonicalQuery(n));
  if (targets) {
    auto* values = topLevelValues(query);
    if (!values) {
      throw Error("CQ" + std::to_string(n) + " takes no input substitution");
    }
    values->rows.clear();
    for (const auto& t : *targets) values->rows.push_back({t});
  }
  auto result = sparql::evaluate(materialized, query);
  result.sortRows();
  return result;
}

sparql::SolutionSequence runCq(const KnowledgeBase& kb, CqId cq,
                               const std::optional<std::vector<Term>>& targets) {
  return runCq(materialize(kb), cq, targets);
}

}  // namespace ccai
