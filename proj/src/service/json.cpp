#include "ccai/service/json.h"

namespace ccai::json {

json term(const Term& t) {
  if (t.isIri()) return {{"type", "uri"}, {"value", t.iri().str()}};
  if (t.isBlank()) return {{"type", "bnode"}, {"value", t.blank().label}};
  const auto& lit = t.literal();
  json out = {{"type", "literal"}, {"value", lit.lexical()}};
  if (lit.hasLanguage()) {
    out["xml:lang"] = lit.language();
  } else {
    out["datatype"] = lit.datatype().str();
  }
  return out;
}

json sparqlResults(const sparql::SolutionSequence& s) {
  json bindings = json::array();
  for (const auto& row : s.rows) {
    json b = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) b[s.variables[i]] = term(*row[i]);
    }
    bindings.push_back(std::move(b));
  }
  return {{"head", {{"vars", s.variables}}}, {"results", {{"bindings", bindings}}}};
}

namespace {

json violations(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json triples = json::array();
    for (const auto& t : v.triples) triples.push_back(t.toNTriples());
    out.push_back({{"kind", toString(v.kind)}, {"triples", triples}, {"explanation", v.explanation}});
  }
  return out;
}

json optionalIri(const std::optional<Iri>& iri) { return iri ? json(iri->str()) : json(nullptr); }

json optionalString(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

}  // namespace

json validation(const ValidationReport& r) {
  return {{"errors", violations(r.errors)}, {"warnings", violations(r.warnings)}};
}

json metricsReport(const metrics::MetricReport& r) {
  const auto& b = r.base;
  json candidates = json::array();
  for (const auto& c : r.relationshipCandidates) {
    candidates.push_back({{"label", c.label},
                          {"non_inheritance_relations", c.nonInheritanceRelations},
                          {"relationship_richness", c.relationshipRichness}});
  }
  return {
      {"base_metrics",
       {{"Classes", b.classes},
        {"Object properties", b.objectProperties},
        {"Data properties", b.datatypeProperties},
        {"Individuals", b.individuals}}},
      {"class_axioms", {{"SubClassOf", b.subclassAxioms}, {"DisjointClasses", b.disjointAxioms}}},
      {"object_property_axioms", {{"InverseObjectProperties", b.inverseAxioms}}},
      {"abox",
       {{"Class assertions", b.classAssertions},
        {"Object property assertions", b.objectAssertions},
        {"Data property assertions", b.dataAssertions}}},
      {"schema_level_indicators",
       {{"Attribute richness", r.attributeRichness},
        {"Inheritance richness", r.inheritanceRichness},
        {"Relationship richness", r.relationshipRichness},
        {"Inverse relations ratio", r.inverseRatio},
        {"Class richness (KB)", r.classRichness}}},
      {"instantiated_classes", r.instantiatedClasses},
      {"non_inheritance_relations", r.nonInheritanceRelations},
      {"relationship_richness_informative", r.relationshipRichnessInformative},
      {"relationship_richness_candidates", candidates},
  };
}

json tasks(const std::vector<prompt::TaskSummary>& tasks) {
  json out = json::array();
  for (const auto& t : tasks) {
    out.push_back({{"task", t.task.str()}, {"name", t.name}, {"process", optionalIri(t.process)}});
  }
  return out;
}

json promptContext(const prompt::PromptContext& c) {
  json resources = json::array();
  for (const auto& r : c.resources) resources.push_back(r.str());
  json pairs = json::array();
  for (const auto& [role, agent] : c.roleAgentPairs) {
    pairs.push_back({{"role", role.str()}, {"agent", agent.str()}});
  }
  json constraints = json::array();
  for (const auto& [iri, label] : c.constraints) {
    constraints.push_back({{"constraint", iri.str()}, {"label", label}});
  }
  return {{"task", c.task.str()},
          {"task_name", c.taskName},
          {"process", optionalIri(c.process)},
          {"context", optionalIri(c.context)},
          {"domain_label", optionalString(c.domainLabel)},
          {"resources", resources},
          {"role_agent_pairs", pairs},
          {"constraints", constraints},
          {"temporal", (c.start || c.end) ? json{{"start", optionalString(c.start)},
                                                 {"end", optionalString(c.end)}}
                                          : json(nullptr)},
          {"spatial", optionalString(c.location)}};
}

json promptText(const prompt::PromptText& p) {
  json fields = json::array();
  for (auto f : p.fieldsPresent) fields.push_back(prompt::toString(f));
  return {{"rendered", p.rendered}, {"fields_present", fields}, {"prompt_digest", p.digest()}};
}

json indicators(const prompt::IndicatorScore& s) {
  return {{"categories_explicit", s.categoriesExplicit},
          {"categories_total", s.categoriesTotal},
          {"context_named", s.contextNamed},
          {"context_total", s.contextTotal},
          {"resources_named", s.resourcesNamed},
          {"resources_total", s.resourcesTotal},
          {"roles_named", s.rolesNamed},
          {"roles_total", s.rolesTotal},
          {"constraints_named", s.constraintsNamed},
          {"constraints_total", s.constraintsTotal},
          {"omitted_items", s.omittedItems},
          {"provenance_path", s.provenancePath}};
}

json generation(const prompt::GenerationResult& r) {
  return {{"output_text", r.outputText},
          {"client_id", r.clientId},
          {"started", prompt::isoUtc(r.started)},
          {"finished", prompt::isoUtc(r.finished)},
          {"success", r.success},
          {"failure_reason", optionalString(r.failureReason)},
          {"prompt_digest", r.promptDigest}};
}

json trace(const prompt::TraceRecord& r) { return json::parse(prompt::toJsonLine(r)); }

json provenance(const prompt::Provenance& p) {
  auto list = [](const std::vector<Iri>& v) {
    json out = json::array();
    for (const auto& i : v) out.push_back(i.str());
    return out;
  };
  return {{"artifact", p.artifact.str()},
          {"types", list(p.types)},
          {"tasks", list(p.tasks)},
          {"agents", list(p.agents)},
          {"generated_at", optionalString(p.generatedAt)}};
}

}  // namespace ccai::json
