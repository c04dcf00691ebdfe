#include <gtest/gtest.h>

#include "ccai/error.h"
#include "ccai/model/knowledge_base.h"
#include "ccai/reason/reasoner.h"
#include "ccai/rdf/vocab.h"
#include "ccai/sparql/evaluator.h"
#include "ccai/sparql/parser.h"
#include "support/support.h"

namespace ccai {
namespace {

using sparql::parseQuery;

std::string queryFile(int n) {
  return testing::readText(testing::dataPath("queries/query" + std::to_string(n) + ".rq"));
}

TEST(ParseQuery, AllCanonicalQueriesParse) {
  for (int n = 1; n <= 7; ++n) {
    EXPECT_NO_THROW(parseQuery(queryFile(n))) << "query " << n;
    EXPECT_EQ(queryFile(n), canonicalQuery(n)) << "embedded copy of query " << n;
  }
}

TEST(ParseQuery, CanonicalQueryOneStructure) {
  auto q = parseQuery(queryFile(1));
  EXPECT_TRUE(q.distinct);
  EXPECT_EQ(q.variables, (std::vector<std::string>{"artifact", "agent"}));
  ASSERT_EQ(q.pattern.elements.size(), 3u);
  const auto* values = std::get_if<sparql::ValuesPattern>(&q.pattern.elements[0]);
  ASSERT_NE(values, nullptr);
  ASSERT_EQ(values->rows.size(), 1u);
  EXPECT_EQ(values->rows[0][0], Term(vocab::ccai("finalReport_P25")));
  EXPECT_TRUE(std::holds_alternative<sparql::TriplePattern>(q.pattern.elements[1]));
  EXPECT_TRUE(std::holds_alternative<sparql::TriplePattern>(q.pattern.elements[2]));
  EXPECT_TRUE(q.warnings.empty());
}

TEST(ParseQuery, CanonicalQuerySixNestsOptional) {
  auto q = parseQuery(queryFile(6));
  ASSERT_EQ(q.pattern.elements.size(), 2u);
  const auto* outer = std::get_if<sparql::OptionalPattern>(&q.pattern.elements[1]);
  ASSERT_NE(outer, nullptr);
  ASSERT_EQ(outer->group->elements.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<sparql::OptionalPattern>(outer->group->elements[1]));
}

TEST(ParseQuery, TypographicQuotesAreNormalized) {
  auto q = parseQuery(queryFile(7));
  const auto& second = std::get<sparql::TriplePattern>(q.pattern.elements[1]);
  EXPECT_EQ(std::get<Term>(second.object), Term(Literal("View & Update Competency Profiles")));
  auto curly = parseQuery("SELECT ?x WHERE { ?x <http://ex.org/p> \xE2\x80\x9Chi\xE2\x80\x9D }");
  const auto& t = std::get<sparql::TriplePattern>(curly.pattern.elements[0]);
  EXPECT_EQ(std::get<Term>(t.object), Term(Literal("hi")));
}

TEST(ParseQuery, UnionKeepsEveryArm) {
  auto q = parseQuery("SELECT ?x WHERE { {?x <http://a/p> ?y} UNION {?x <http://a/q> ?y} UNION {?x <http://a/r> ?y} }");
  const auto& u = std::get<sparql::UnionPattern>(q.pattern.elements[0]);
  EXPECT_EQ(u.arms.size(), 3u);
}

TEST(ParseQuery, MalformedIsParseError) {
  EXPECT_THROW(parseQuery("SELECT ?x WHERE { ?x ORDER }"), ParseError);
  EXPECT_THROW(parseQuery("SELECT ?x WHERE { ?x <http://a/p> }"), ParseError);
  EXPECT_THROW(parseQuery("SELECT WHERE { ?x <http://a/p> ?y }"), ParseError);
  EXPECT_THROW(parseQuery("SELECT ?x WHERE { ?x zz:p ?y }"), UnknownPrefix);
  EXPECT_THROW(parseQuery("SELECT ?x WHERE { VALUES (?x ?y) { (<http://a/b>) } }"), ParseError);
  try {
    parseQuery("PREFIX ex: <http://ex.org/>\nSELECT ?x\nWHERE { ?x ex:p\n }");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ParseQuery, UnsupportedFeaturesAreNamed) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"SELECT ?x WHERE { ?x ?p ?o FILTER(?o > 1) }", "FILTER"},
      {"SELECT ?x WHERE { ?x ?p ?o } ORDER BY ?x", "ORDER"},
      {"SELECT ?x WHERE { ?x ?p ?o } LIMIT 3", "LIMIT"},
      {"SELECT * WHERE { ?x ?p ?o }", "SELECT *"},
      {"ASK { ?x ?p ?o }", "ASK"},
      {"CONSTRUCT { ?x ?p ?o } WHERE { ?x ?p ?o }", "CONSTRUCT"},
      {"SELECT ?x WHERE { ?x <http://a/p>/<http://a/q> ?o }", "property path"},
      {"SELECT ?x WHERE { ?x ?p ?o BIND(1 AS ?y) }", "BIND"},
      {"SELECT ?x WHERE { ?x ?p ?o MINUS { ?x ?p 1 } }", "MINUS"},
      {"SELECT ?x WHERE { GRAPH ?g { ?x ?p ?o } }", "GRAPH"},
      {"SELECT (COUNT(?x) AS ?n) WHERE { ?x ?p ?o }", "projection expression"},
  };
  for (const auto& [text, construct] : cases) {
    try {
      parseQuery(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const UnsupportedFeature& e) {
      EXPECT_NE(e.construct().find(construct), std::string::npos) << e.construct() << " for " << text;
      EXPECT_GE(e.line(), 1u);
    }
  }
}

TEST(ParseQuery, UnboundProjectionWarns) {
  auto q = parseQuery("SELECT ?x ?nowhere WHERE { ?x <http://a/p> ?y }");
  EXPECT_EQ(q.warnings.size(), 1u);
}

Graph threeTriples() {
  Graph g;
  g.insert(Triple(testing::exNode(1), testing::exPredicate(0), testing::exNode(2)));
  g.insert(Triple(testing::exNode(2), testing::exPredicate(0), testing::exNode(3)));
  g.insert(Triple(testing::exNode(2), testing::exPredicate(1), Literal("named")));
  return g;
}

TEST(Evaluate, OptionalUnmatchedKeepsRow) {
  auto result = sparql::evaluate(threeTriples(),
                                 "SELECT ?s ?o ?n WHERE { ?s <http://ex.org/p0> ?o OPTIONAL { ?s <http://ex.org/p1> ?n } }");
  result.sortRows();
  ASSERT_EQ(result.size(), 2u);
  EXPECT_EQ(result.rows[0][0], Term(testing::exNode(1)));
  EXPECT_FALSE(result.rows[0][2]);
  EXPECT_EQ(result.rows[1][2], Term(Literal("named")));
}

TEST(Evaluate, EmptyGraph) {
  EXPECT_TRUE(sparql::evaluate(Graph(), "SELECT ?s WHERE { ?s ?p ?o }").empty());
  auto only = sparql::evaluate(Graph(), "SELECT ?s WHERE { VALUES ?s { <http://a/b> } }");
  EXPECT_EQ(only.size(), 1u);
}

TEST(Evaluate, ContextQueryOnCaseStudy) {
  auto g = materialize(loadFixture("casestudy"));
  auto result = sparql::evaluate(g, queryFile(7));
  EXPECT_EQ(result.size(), 9u);
}

TEST(Evaluate, CanonicalQueryTwoOnFigure8) {
  auto result = sparql::evaluate(materialize(loadFixture("figure8")), queryFile(2));
  ASSERT_EQ(result.size(), 1u);
  EXPECT_EQ(result.rows[0],
            (sparql::Binding{Term(vocab::ccai("InitiationAndContextSetting")), Term(vocab::ccai("AIAnalyticsAgent")),
                             Term(vocab::ccai("GenerativeAIAnalyticsAgentRole"))}));
}

TEST(Evaluate, MatchesBruteForceOracle) {
  testing::Rng rng(101);
  for (int i = 0; i < 60; ++i) {
    Graph g = testing::randomGraph(rng, {.maxTriples = 200});
    auto text = testing::randomQuery(rng);
    auto q = parseQuery(text);
    ASSERT_EQ(testing::sortedRows(sparql::evaluate(g, q)), testing::bruteForce(g, q)) << text;
  }
}

TEST(Evaluate, DistinctIdempotentProperty) {
  testing::Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    Graph g = testing::randomGraph(rng, {.maxTriples = 100});
    auto q = parseQuery(testing::randomQuery(rng));
    q.distinct = true;
    auto once = sparql::evaluate(g, q);
    auto twice = once;
    twice.removeDuplicates();
    EXPECT_EQ(once.rows, twice.rows);
  }
}

TEST(Evaluate, BgpMonotonicProperty) {
  testing::Rng rng(9);
  const std::string q =
      "PREFIX ex: <http://ex.org/> SELECT ?a ?b ?c WHERE { ?a ex:p0 ?b . ?b ex:p1 ?c }";
  for (int i = 0; i < 30; ++i) {
    Graph small = testing::randomGraph(rng, {.maxTriples = 80});
    Graph big = merge(small, testing::randomGraph(rng, {.maxTriples = 80}));
    auto before = testing::sortedRows(sparql::evaluate(small, q));
    auto after = testing::sortedRows(sparql::evaluate(big, q));
    EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
  }
}

// Every row, restricted to the BGP variables, satisfies all patterns.
TEST(Evaluate, ProjectionSoundnessProperty) {
  testing::Rng rng(13);
  const std::string q =
      "PREFIX ex: <http://ex.org/> SELECT ?c ?a WHERE { ?a ex:p0 ?b . ?b ?p ?c }";
  for (int i = 0; i < 20; ++i) {
    Graph g = testing::randomGraph(rng, {.maxTriples = 150});
    auto full = sparql::evaluate(g, "PREFIX ex: <http://ex.org/> SELECT ?a ?b ?p ?c WHERE { ?a ex:p0 ?b . ?b ?p ?c }");
    for (const auto& row : full.rows) {
      EXPECT_TRUE(g.contains(Triple(*row[0], testing::exPredicate(0), *row[1])));
      EXPECT_TRUE(g.contains(Triple(*row[1], row[2]->iri(), *row[3])));
    }
    auto projected = sparql::evaluate(g, q);
    EXPECT_EQ(projected.size(), full.size());
  }
}

TEST(SolutionSequence, SortPutsUnboundFirst) {
  sparql::SolutionSequence s{{"x"}, {{Term(Literal("b"))}, {std::nullopt}, {Term(Literal("a"))}}};
  s.sortRows();
  EXPECT_FALSE(s.rows[0][0]);
  EXPECT_EQ(s.rows[1][0], Term(Literal("a")));
  EXPECT_EQ(s.column("x"), 0u);
  EXPECT_FALSE(s.column("y"));
}

}  // namespace
}  // namespace ccai
