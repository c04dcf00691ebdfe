#include "ccai/prompt/pipeline.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "ccai/error.h"
#include "ccai/reason/reasoner.h"
#include "ccai/rdf/vocab.h"
#include "ccai/sparql/evaluator.h"
#include "ccai/sparql/parser.h"

namespace ccai::prompt {

namespace {

constexpr std::string_view kContextQuery = R"(
PREFIX ccai: <http://gamaizer.ai/ccai#>
SELECT DISTINCT ?task ?process ?context ?resource ?role ?agent
WHERE {
 VALUES ?task { ccai:Task }
 ?task a ccai:Task .
 OPTIONAL {
  { ?task ccai:partOfProcess ?process . }
  UNION
  { ?process a ccai:CollaborationProcess ;
    ccai:containsTask ?task . }
 }
 OPTIONAL { ?task ccai:hasContext ?context . }
 OPTIONAL {
  { ?task ccai:includesResources ?resource . }
  UNION
  { ?resource a ccai:CollaborationResource ;
    ccai:usedForTask ?task . }
 }
 OPTIONAL {
  ?agent ccai:executes ?task ;
   ccai:assignedRole ?role .
 }
})";

constexpr std::string_view kAttributeQuery = R"(
PREFIX ccai: <http://gamaizer.ai/ccai#>
SELECT DISTINCT ?context ?domainLabel ?start ?started ?end ?location
WHERE {
 VALUES ?context { ccai:CollaborationContext }
 ?context a ccai:CollaborationContext .
 OPTIONAL {
  ?context a ccai:DomainContext .
  OPTIONAL { ?context ccai:domainLabel ?domainLabel . }
 }
 OPTIONAL {
  ?context a ccai:TemporalContext .
  OPTIONAL { ?context ccai:hasStartDate ?start . }
  OPTIONAL { ?context ccai:startedAtTime ?started . }
  OPTIONAL { ?context ccai:hasEndDate ?end . }
 }
 OPTIONAL {
  ?context a ccai:SpatialContext .
  OPTIONAL { ?context ccai:locationName ?location . }
 }
})";

constexpr std::string_view kConstraintQuery = R"(
PREFIX ccai: <http://gamaizer.ai/ccai#>
SELECT DISTINCT ?context ?constraint ?constraintLabel
WHERE {
 VALUES ?context { ccai:CollaborationContext }
 ?context a ccai:CollaborationContext .
 OPTIONAL {
  ?context ccai:hasEthicalConstraint ?constraint .
  OPTIONAL { ?constraint ccai:constraintLabel ?constraintLabel . }
 }
})";

sparql::SolutionSequence runWithValues(const Graph& g, std::string_view text,
                                       const std::vector<Term>& values) {
  auto query = sparql::parseQuery(text);
  for (auto& e : query.pattern.elements) {
    if (auto* v = std::get_if<sparql::ValuesPattern>(&e)) {
      v->rows.clear();
      for (const auto& t : values) v->rows.push_back({t});
      break;
    }
  }
  auto result = sparql::evaluate(g, query);
  result.sortRows();
  return result;
}

const Iri* iriCell(const sparql::Binding& row, std::size_t i) {
  return row[i] && row[i]->isIri() ? &row[i]->iri() : nullptr;
}

std::optional<std::string> lexicalCell(const sparql::Binding& row, std::size_t i) {
  if (row[i] && row[i]->isLiteral()) return row[i]->literal().lexical();
  return std::nullopt;
}

std::optional<std::string> firstLiteral(const Graph& g, const Iri& subject, const Iri& property) {
  std::optional<std::string> best;
  for (const auto& t : g.match(Term(subject), property, std::nullopt)) {
    if (!t.object().isLiteral()) continue;
    const auto& lex = t.object().literal().lexical();
    if (!best || lex < *best) best = lex;
  }
  return best;
}

bool isTask(const Graph& g, const Iri& iri) {
  return g.contains(Triple(iri, vocab::rdfType(), vocab::ccai("Task")));
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view localName(const Iri& iri) {
  auto v = iri.view();
  auto cut = v.find_last_of("#/");
  return cut == std::string_view::npos ? v : v.substr(cut + 1);
}

std::vector<TaskSummary> listTasks(const Graph& g) {
  std::vector<TaskSummary> out;
  for (const auto& t : g.match(std::nullopt, vocab::rdfType(), Term(vocab::ccai("Task")))) {
    if (!t.subject().isIri()) continue;
    const Iri& task = t.subject().iri();
    TaskSummary s{task, firstLiteral(g, task, vocab::ccai("taskName")).value_or(""), std::nullopt};
    for (const auto& p : g.match(Term(task), vocab::ccai("partOfProcess"), std::nullopt)) {
      if (p.object().isIri() && (!s.process || p.object().iri() < *s.process)) {
        s.process = p.object().iri();
      }
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const TaskSummary& a, const TaskSummary& b) { return a.task < b.task; });
  return out;
}

Iri resolveTask(const KnowledgeBase& kb, const Graph& materialized, std::string_view reference) {
  std::string ref = trim(reference);
  if (ref.empty()) throw TaskNotFound("empty task reference");
  std::optional<Iri> candidate;
  if (ref.front() == '<' && ref.back() == '>') {
    candidate = Iri(ref.substr(1, ref.size() - 2));
  } else if (ref.find("://") != std::string::npos) {
    candidate = Iri(ref);
  } else if (auto colon = ref.find(':'); colon != std::string::npos &&
                                         ref.find(' ') == std::string::npos &&
                                         kb.prefixes.contains(ref.substr(0, colon))) {
    candidate = kb.prefixes.expand(ref);
  }
  if (candidate && isTask(materialized, *candidate)) return *candidate;

  std::vector<Iri> named;
  for (const auto& t : materialized.match(std::nullopt, vocab::ccai("taskName"), Term(Literal(ref)))) {
    if (t.subject().isIri() && isTask(materialized, t.subject().iri())) {
      named.push_back(t.subject().iri());
    }
  }
  std::sort(named.begin(), named.end());
  named.erase(std::unique(named.begin(), named.end()), named.end());
  if (named.size() > 1) {
    throw AmbiguousTaskName("task name '" + ref + "' is shared by " +
                            std::to_string(named.size()) + " tasks");
  }
  if (named.empty()) throw TaskNotFound("no task matches '" + ref + "'");
  return named.front();
}

PromptContext retrieveContext(const Graph& g, const Iri& task) {
  if (!isTask(g, task)) throw TaskNotFound("not a task: " + task.str());
  PromptContext ctx{task, firstLiteral(g, task, vocab::ccai("taskName")).value_or(""),
                    {}, {}, {}, {}, {}, {}, {}, {}, {}};

  auto rows = runWithValues(g, kContextQuery, {Term(task)});
  std::set<Iri> processes, contexts, resources;
  std::set<std::pair<Iri, Iri>> pairs;
  for (const auto& row : rows.rows) {
    if (const auto* p = iriCell(row, 1)) processes.insert(*p);
    if (const auto* c = iriCell(row, 2)) contexts.insert(*c);
    if (const auto* r = iriCell(row, 3)) resources.insert(*r);
    const auto* role = iriCell(row, 4);
    const auto* agent = iriCell(row, 5);
    if (role && agent) pairs.emplace(*role, *agent);
  }
  if (!processes.empty()) ctx.process = *processes.begin();
  if (!contexts.empty()) ctx.context = *contexts.begin();
  ctx.resources.assign(resources.begin(), resources.end());
  ctx.roleAgentPairs.assign(pairs.begin(), pairs.end());

  if (ctx.context) {
    auto attrs = runWithValues(g, kAttributeQuery, {Term(*ctx.context)});
    for (const auto& row : attrs.rows) {
      if (!ctx.domainLabel) ctx.domainLabel = lexicalCell(row, 1);
      if (!ctx.start) ctx.start = lexicalCell(row, 2);
      if (!ctx.start) ctx.start = lexicalCell(row, 3);
      if (!ctx.end) ctx.end = lexicalCell(row, 4);
      if (!ctx.location) ctx.location = lexicalCell(row, 5);
    }
  }

  if (!contexts.empty()) {
    std::vector<Term> all(contexts.begin(), contexts.end());
    auto found = runWithValues(g, kConstraintQuery, all);
    std::map<Iri, std::string> constraints;
    for (const auto& row : found.rows) {
      const auto* c = iriCell(row, 1);
      if (!c) continue;
      auto label = lexicalCell(row, 2).value_or("");
      auto [it, inserted] = constraints.emplace(*c, label);
      if (!inserted && !label.empty() && (it->second.empty() || label < it->second)) {
        it->second = label;
      }
    }
    ctx.constraints.assign(constraints.begin(), constraints.end());
  }
  return ctx;
}

PromptContext retrieveContext(const KnowledgeBase& kb, std::string_view taskReference) {
  Graph g = materialize(kb);
  return retrieveContext(g, resolveTask(kb, g, taskReference));
}

std::string_view toString(PromptField field) {
  switch (field) {
    case PromptField::Task: return "Task";
    case PromptField::Context: return "Context";
    case PromptField::Resources: return "Resources";
    case PromptField::RolesAgents: return "RolesAgents";
    case PromptField::Constraints: return "Constraints";
    case PromptField::ExpectedOutput: return "ExpectedOutput";
    case PromptField::Instruction: return "Instruction";
  }
  return "?";
}

std::string PromptText::digest() const { return sha256Hex(rendered); }

PromptText assemblePrompt(const PromptContext& ctx, std::string_view instruction,
                          const std::optional<std::string>& expectedOutput,
                          const PrefixMap& prefixes) {
  std::string instr = trim(instruction);
  if (instr.empty()) throw EmptyInstruction("instruction must not be empty");
  auto name = [&](const Iri& iri) { return prefixes.render(iri); };

  PromptText out;
  std::string& s = out.rendered;
  auto section = [&](PromptField field, std::string_view heading) {
    if (!s.empty()) s += '\n';
    s += heading;
    s += ":\n";
    out.fieldsPresent.push_back(field);
  };

  section(PromptField::Task, "Task");
  s += "- " + name(ctx.task);
  if (!ctx.taskName.empty()) s += " \"" + ctx.taskName + "\"";
  s += '\n';

  if (ctx.context || ctx.process || ctx.start || ctx.end || ctx.location) {
    section(PromptField::Context, "Context");
    if (ctx.context) {
      s += "- Context: " + name(*ctx.context);
      if (ctx.domainLabel) s += " \"" + *ctx.domainLabel + "\"";
      s += '\n';
    }
    if (ctx.process) s += "- Process: " + name(*ctx.process) + '\n';
    if (ctx.start || ctx.end) {
      s += "- Timeline: " + ctx.start.value_or("?") + " to " + ctx.end.value_or("?") + '\n';
    }
    if (ctx.location) s += "- Location: " + *ctx.location + '\n';
  }
  if (!ctx.resources.empty()) {
    section(PromptField::Resources, "Resources");
    for (const auto& r : ctx.resources) s += "- " + name(r) + '\n';
  }
  if (!ctx.roleAgentPairs.empty()) {
    section(PromptField::RolesAgents, "Team & Roles");
    for (const auto& [role, agent] : ctx.roleAgentPairs) {
      s += "- " + name(agent) + " as " + name(role) + '\n';
    }
  }
  if (!ctx.constraints.empty()) {
    section(PromptField::Constraints, "Constraints");
    for (const auto& [c, label] : ctx.constraints) {
      s += "- " + name(c);
      if (!label.empty()) s += " \"" + label + "\"";
      s += '\n';
    }
  }
  if (expectedOutput && !trim(*expectedOutput).empty()) {
    section(PromptField::ExpectedOutput, "Expected Output");
    s += trim(*expectedOutput) + '\n';
  }
  section(PromptField::Instruction, "Instruction");
  s += instr + '\n';
  return out;
}

std::string sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

namespace {

std::vector<std::string> namesOf(const Graph& g, const Iri& iri) {
  std::vector<std::string> names{std::string(localName(iri))};
  for (const auto& p : {vocab::rdfs("label"), vocab::ccai("taskName"),
                        vocab::ccai("constraintLabel"), vocab::ccai("domainLabel"),
                        vocab::foaf("name")}) {
    for (const auto& t : g.match(Term(iri), p, std::nullopt)) {
      if (t.object().isLiteral() && !t.object().literal().lexical().empty()) {
        names.push_back(t.object().literal().lexical());
      }
    }
  }
  return names;
}

bool named(const Graph& g, const Iri& iri, std::string_view text) {
  for (const auto& n : namesOf(g, iri)) {
    if (!n.empty() && text.find(n) != std::string_view::npos) return true;
  }
  return false;
}

}  // namespace

IndicatorScore scoreIndicators(const Graph& g, const Iri& task,
                               std::string_view text, const std::optional<Iri>& artifact) {
  PromptContext ctx = retrieveContext(g, task);
  IndicatorScore s;
  s.contextTotal = ctx.context ? 1 : 0;
  s.contextNamed = ctx.context && named(g, *ctx.context, text) ? 1 : 0;
  s.resourcesTotal = static_cast<int>(ctx.resources.size());
  for (const auto& r : ctx.resources) s.resourcesNamed += named(g, r, text) ? 1 : 0;
  s.rolesTotal = static_cast<int>(ctx.roleAgentPairs.size());
  for (const auto& [role, agent] : ctx.roleAgentPairs) {
    s.rolesNamed += named(g, role, text) && named(g, agent, text) ? 1 : 0;
  }
  s.constraintsTotal = static_cast<int>(ctx.constraints.size());
  for (const auto& c : ctx.constraints) s.constraintsNamed += named(g, c.first, text) ? 1 : 0;

  auto explicitCategory = [](int namedCount, int total) { return total == 0 || namedCount > 0; };
  s.categoriesExplicit = explicitCategory(s.contextNamed, s.contextTotal) +
                         explicitCategory(s.resourcesNamed, s.resourcesTotal) +
                         explicitCategory(s.rolesNamed, s.rolesTotal) +
                         explicitCategory(s.constraintsNamed, s.constraintsTotal);
  s.omittedItems = (s.contextTotal + s.resourcesTotal + s.rolesTotal + s.constraintsTotal) -
                   (s.contextNamed + s.resourcesNamed + s.rolesNamed + s.constraintsNamed);

  if (artifact) {
    bool generated = g.contains(Triple(*artifact, vocab::prov("wasGeneratedBy"), task));
    bool attributed =
        !g.match(Term(*artifact), vocab::prov("wasAttributedTo"), std::nullopt).empty();
    s.provenancePath = generated && attributed;
  }
  return s;
}

IndicatorScore scoreIndicators(const KnowledgeBase& kb, const Iri& task, std::string_view text,
                               const std::optional<Iri>& artifact) {
  return scoreIndicators(materialize(kb), task, text, artifact);
}

}  // namespace ccai::prompt
