// JSON renderings shared by the HTTP service and the CLI.

#pragma once

#include <json.hpp>

#include "ccai/metrics/metrics.h"
#include "ccai/prompt/trace.h"
#include "ccai/reason/reasoner.h"
#include "ccai/sparql/evaluator.h"

namespace ccai::json {

using nlohmann::json;

// SPARQL 1.1 results layout: head.vars and results.bindings with term
// objects {type, value, datatype?, xml:lang?}; unbound cells are omitted.
json sparqlResults(const sparql::SolutionSequence& s);
json term(const Term& t);

json validation(const ValidationReport& r);
// Keys follow the row names of the usual ontology-metrics summary table.
json metricsReport(const metrics::MetricReport& r);

json tasks(const std::vector<prompt::TaskSummary>& tasks);
json promptContext(const prompt::PromptContext& ctx);
json promptText(const prompt::PromptText& p);
json indicators(const prompt::IndicatorScore& s);
json generation(const prompt::GenerationResult& r);
json trace(const prompt::TraceRecord& r);
json provenance(const prompt::Provenance& p);

}  // namespace ccai::json
