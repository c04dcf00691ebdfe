#include <gtest/gtest.h>

#include "ccai/error.h"
#include "ccai/model/knowledge_base.h"
#include "ccai/rdf/vocab.h"
#include "ccai/turtle/turtle.h"
#include "support/support.h"

namespace ccai {
namespace {

constexpr const char* kPrefixes =
    "@prefix ccai: <http://gamaizer.ai/ccai#> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

TEST(ParseTurtle, EmptyDocument) {
  auto doc = parseTurtle("");
  EXPECT_TRUE(doc.graph.empty());
  EXPECT_TRUE(doc.prefixes.empty());
  EXPECT_FALSE(doc.base);
}

TEST(ParseTurtle, SingleTypedResource) {
  auto doc = parseTurtle(
      "@prefix ccai: <http://gamaizer.ai/ccai#> . ccai:CompetencyDB a ccai:CollaborationResource .");
  ASSERT_EQ(doc.graph.size(), 1u);
  EXPECT_TRUE(doc.graph.contains(Triple(Iri("http://gamaizer.ai/ccai#CompetencyDB"),
                                        Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"),
                                        Iri("http://gamaizer.ai/ccai#CollaborationResource"))));
}

TEST(ParseTurtle, TypedLiteral) {
  auto doc = parseTurtle(std::string(kPrefixes) +
                         "ccai:T ccai:hasStartTime \"2025-01-06T09:00:00\"^^xsd:dateTime .");
  ASSERT_EQ(doc.graph.size(), 1u);
  const auto& o = doc.graph.triples().begin()->object();
  ASSERT_TRUE(o.isLiteral());
  EXPECT_EQ(o.literal().datatype(), vocab::xsd("dateTime"));
  EXPECT_EQ(o.literal().lexical(), "2025-01-06T09:00:00");
}

TEST(ParseTurtle, ListsShorthandsAndLiterals) {
  auto doc = parseTurtle(std::string(kPrefixes) +
                         "@base <http://base.org/> .\n"
                         "PREFIX ex: <http://ex.org/>\n"
                         "<rel> ex:p ex:a , ex:b ; ex:q 12 , -1.5 , 1e3 , true ;\n"
                         "  ex:r \"\"\"multi\nline\"\"\" , 'single'@en-GB , \"\\u00e9\" ;\n"
                         "  ex:s [ ex:t ex:c ] , _:x .\n"
                         "_:x ex:u ex:d .\n");
  const auto& g = doc.graph;
  Iri s("http://base.org/rel");
  auto objects = [&](const char* p) { return g.match(Term(s), Iri(std::string("http://ex.org/") + p), std::nullopt); };
  EXPECT_EQ(objects("p").size(), 2u);
  auto q = objects("q");
  ASSERT_EQ(q.size(), 4u);
  std::set<Iri> types;
  for (const auto& t : q) types.insert(t.object().literal().datatype());
  EXPECT_EQ(types, (std::set<Iri>{vocab::xsd("integer"), vocab::xsd("decimal"), vocab::xsd("double"),
                                   vocab::xsd("boolean")}));
  auto r = objects("r");
  ASSERT_EQ(r.size(), 3u);
  std::set<std::string> lex;
  for (const auto& t : r) lex.insert(t.object().literal().lexical());
  EXPECT_TRUE(lex.contains("multi\nline"));
  EXPECT_TRUE(lex.contains("\xC3\xA9"));
  EXPECT_EQ(objects("s").size(), 2u);
  EXPECT_EQ(g.size(), 13u);
  EXPECT_EQ(doc.base, Iri("http://base.org/"));
}

TEST(ParseTurtle, ErrorsCarryPosition) {
  try {
    parseTurtle("@prefix ex: <http://ex.org/> .\nex:a ex:b ( ex:c ) .");
    FAIL() << "collection accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 11u);
  }
  EXPECT_THROW(parseTurtle("zz:a zz:b zz:c ."), UnknownPrefix);
  EXPECT_THROW(parseTurtle("<http://a/> <http://b/> \"open ."), ParseError);
  EXPECT_THROW(parseTurtle("<http://a/> <http://b/> <http://c/>"), ParseError);
  EXPECT_THROW(parseTurtle("\"lit\" <http://b/> <http://c/> ."), ParseError);
}

// A lone '@' injected at the start of any line of a fixture is reported on that line.
TEST(ParseTurtle, InjectedErrorLineProperty) {
  std::string text(bundledTurtle("casestudy"));
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n' && i + 1 < text.size()) starts.push_back(i + 1);
  }
  testing::Rng rng(3);
  for (int n = 0; n < 40; ++n) {
    std::size_t line = std::uniform_int_distribution<std::size_t>(0, starts.size() - 1)(rng);
    std::string broken = text;
    broken.insert(starts[line], "@ ");
    try {
      parseTurtle(broken);
      ADD_FAILURE() << "accepted '@' on line " << line + 1;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line + 1);
    }
  }
}

TEST(SerializeTurtle, EmptyAndSingleTriple) {
  EXPECT_EQ(serializeTurtle(Graph()), "");
  Graph g;
  g.insert(Triple(vocab::ccai("A"), vocab::rdfType(), vocab::ccai("Task")));
  auto text = serializeTurtle(g);
  EXPECT_NE(text.find("@prefix ccai: <http://gamaizer.ai/ccai#> ."), std::string::npos);
  EXPECT_NE(text.find("ccai:A a ccai:Task ."), std::string::npos) << text;
  EXPECT_TRUE(text.ends_with(" .\n"));
}

TEST(SerializeTurtle, DeterministicAndRoundTripsFixtures) {
  for (const char* name : {"ccai-tbox", "figure8", "casestudy"}) {
    auto doc = parseTurtle(bundledTurtle(name));
    auto once = serializeTurtle(doc);
    EXPECT_EQ(once, serializeTurtle(doc));
    auto again = parseTurtle(once);
    EXPECT_TRUE(isomorphic(doc.graph, again.graph)) << name;
    EXPECT_EQ(serializeTurtle(again), once) << name;
  }
}

TEST(SerializeTurtle, RandomRoundTripProperty) {
  testing::Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    Graph g = testing::randomGraph(rng, {.nodes = 10, .predicates = 3, .maxTriples = 60, .blankSubjects = 0.3});
    auto back = parseTurtle(serializeTurtle(g)).graph;
    ASSERT_TRUE(isomorphic(g, back)) << serializeTurtle(g);
  }
}

TEST(SerializeTurtle, EscapesAwkwardLiterals) {
  Graph g;
  for (const char* s : {"quote\"d", "back\\slash", "tab\tnl\nret\r", "\"\"\"", "", "ends with \""}) {
    g.insert(Triple(vocab::ccai("x"), vocab::ccai("p"), Literal(s)));
  }
  g.insert(Triple(Iri("http://ex.org/a%20b("), vocab::ccai("p"), Literal::withLanguage("x", "en-GB")));
  EXPECT_EQ(parseTurtle(serializeTurtle(g)).graph, g);
}

TEST(ExportNTriples, SortedOneLinePerTriple) {
  EXPECT_EQ(exportNTriples(Graph()), "");
  auto kb = loadFixture("figure8");
  auto g = kb.combined();
  auto nt = exportNTriples(g);
  EXPECT_EQ(static_cast<std::size_t>(std::count(nt.begin(), nt.end(), '\n')), g.size());
  EXPECT_EQ(nt, exportNTriples(loadFixture("figure8").combined()));
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < nt.size()) {
    auto end = nt.find('\n', pos);
    lines.push_back(nt.substr(pos, end - pos));
    EXPECT_TRUE(lines.back().ends_with(" ."));
    pos = end + 1;
  }
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
}

}  // namespace
}  // namespace ccai
