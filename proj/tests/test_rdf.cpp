#include <gtest/gtest.h>

#include "ccai/error.h"
#include "ccai/rdf/graph.h"
#include "ccai/rdf/vocab.h"
#include "support/support.h"

namespace ccai {
namespace {

using testing::exNode;
using testing::exPredicate;

TEST(Iri, InterningMakesEqualValuesIdentical) {
  Iri a("http://gamaizer.ai/ccai#Task");
  Iri b(std::string("http://gamaizer.ai/ccai#") + "Task");
  EXPECT_EQ(a, b);
  EXPECT_EQ(&a.str(), &b.str());
  EXPECT_LT(Iri("http://a/x"), Iri("http://a/y"));
}

TEST(Iri, RejectsEmptyAndWhitespace) {
  EXPECT_THROW(Iri(""), InvalidTerm);
  EXPECT_THROW(Iri("http://a/b c"), InvalidTerm);
}

TEST(Literal, EqualityIsLexicalNotValueBased) {
  Literal a("01", vocab::xsd("integer"));
  Literal b("1", vocab::xsd("integer"));
  EXPECT_NE(a, b);
  EXPECT_EQ(Literal("x").datatype(), vocab::xsdString());
  auto en = Literal::withLanguage("x", "en");
  EXPECT_EQ(en.datatype(), vocab::rdfLangString());
  EXPECT_NE(en, Literal("x"));
  EXPECT_THROW(Literal("x", vocab::rdfLangString()), InvalidTerm);
}

TEST(Term, OrderingPutsIrisThenLiteralsThenBlanks) {
  Term i(Iri("http://z/z"));
  Term l(Literal("a"));
  Term b(BlankNode{"a"});
  EXPECT_LT(i, l);
  EXPECT_LT(l, b);
}

TEST(Term, NTriplesRendering) {
  EXPECT_EQ(Term(Iri("http://a/b")).toNTriples(), "<http://a/b>");
  EXPECT_EQ(Term(Literal("x\"y\n")).toNTriples(), "\"x\\\"y\\n\"");
  EXPECT_EQ(Term(Literal("2025-03-03", vocab::xsd("date"))).toNTriples(),
            "\"2025-03-03\"^^<http://www.w3.org/2001/XMLSchema#date>");
  EXPECT_EQ(Term(Literal::withLanguage("hi", "en")).toNTriples(), "\"hi\"@en");
  EXPECT_EQ(Term(BlankNode{"b1"}).toNTriples(), "_:b1");
}

TEST(Triple, RejectsLiteralSubject) {
  EXPECT_THROW(Triple(Literal("x"), vocab::rdfType(), Term(Iri("http://a/b"))), InvalidTerm);
}

TEST(PrefixMap, ExpandCompactRender) {
  const auto& p = standardPrefixes();
  EXPECT_EQ(p.expand("ccai:Task"), Iri("http://gamaizer.ai/ccai#Task"));
  EXPECT_THROW(p.expand("nope:Task"), UnknownPrefix);
  EXPECT_THROW(p.expand("Task"), InvalidTerm);
  EXPECT_EQ(p.compact(Iri("http://www.w3.org/ns/prov#Entity")), "prov:Entity");
  EXPECT_EQ(p.render(Iri("http://other.org/x")), "<http://other.org/x>");
  EXPECT_EQ(p.render(Iri("http://gamaizer.ai/ccai#has(paren)")),
            "<http://gamaizer.ai/ccai#has(paren)>") << "not a safe local name";
}

TEST(PrefixMap, ResolveAcceptsIriFormsAndCuries) {
  const auto& p = standardPrefixes();
  EXPECT_EQ(p.resolve("<http://x.org/a>"), Iri("http://x.org/a"));
  EXPECT_EQ(p.resolve("http://x.org/a"), Iri("http://x.org/a"));
  EXPECT_EQ(p.resolve("urn:uuid:1"), Iri("urn:uuid:1"));
  EXPECT_EQ(p.resolve("ccai:X"), vocab::ccai("X"));
  EXPECT_THROW(p.resolve("zz:X"), UnknownPrefix);
}

TEST(PrefixMap, RoundTripProperty) {
  testing::Rng rng(7);
  const auto& p = standardPrefixes();
  const std::string alphabet = "abcXYZ_019-.";
  for (int i = 0; i < 500; ++i) {
    std::string local;
    for (int n = std::uniform_int_distribution<int>(1, 8)(rng); n > 0; --n) {
      local += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    }
    Iri iri = vocab::ccai(local);
    if (auto c = p.compact(iri)) {
      EXPECT_TRUE(isSafeLocalName(local));
      EXPECT_EQ(p.expand(*c), iri) << *c;
    } else {
      EXPECT_FALSE(isSafeLocalName(local)) << local;
    }
  }
}

TEST(PrefixMap, MergeKeepsLeftBindings) {
  PrefixMap a;
  a.bind("ex", "http://a/");
  PrefixMap b;
  b.bind("ex", "http://b/");
  b.bind("other", "http://o/");
  a.mergeFrom(b);
  EXPECT_EQ(a.namespaceOf("ex"), "http://a/");
  EXPECT_EQ(a.namespaceOf("other"), "http://o/");
}

TEST(Graph, SetSemanticsAndRemove) {
  Graph g;
  Triple t(exNode(1), exPredicate(1), exNode(2));
  EXPECT_TRUE(g.insert(t));
  EXPECT_FALSE(g.insert(t));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.remove(t));
  EXPECT_FALSE(g.remove(t));
  EXPECT_TRUE(g.empty());
}

// Every combination of bound positions agrees with a linear scan.
TEST(Graph, MatchAgreesWithScanProperty) {
  testing::Rng rng(11);
  for (int round = 0; round < 30; ++round) {
    Graph g = testing::randomGraph(rng, {.nodes = 6, .predicates = 3, .maxTriples = 80});
    std::vector<Term> subjects;
    std::vector<Term> objects;
    for (const auto& t : g.triples()) {
      subjects.push_back(t.subject());
      objects.push_back(t.object());
    }
    if (subjects.empty()) continue;
    for (int q = 0; q < 20; ++q) {
      std::uniform_int_distribution<std::size_t> si(0, subjects.size() - 1);
      std::optional<Term> s;
      std::optional<Iri> p;
      std::optional<Term> o;
      if (rng() % 2) s = subjects[si(rng)];
      if (rng() % 2) p = exPredicate(static_cast<int>(rng() % 3));
      if (rng() % 2) o = objects[si(rng)];
      std::vector<Triple> expected;
      for (const auto& t : g.triples()) {
        if ((!s || t.subject() == *s) && (!p || t.predicate() == *p) && (!o || t.object() == *o)) {
          expected.push_back(t);
        }
      }
      auto got = g.match(s, p, o);
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(Graph, MergeRelabelsCollidingBlankNodes) {
  Graph a;
  a.insert(Triple(BlankNode{"x"}, exPredicate(0), exNode(1)));
  Graph b;
  b.insert(Triple(BlankNode{"x"}, exPredicate(0), exNode(2)));
  Graph m = merge(a, b);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.blankLabels().size(), 2u);
}

TEST(Graph, IsomorphismMatchesExhaustiveSearch) {
  testing::Rng rng(19);
  for (int round = 0; round < 60; ++round) {
    testing::GraphShape shape{.nodes = 5, .predicates = 2, .maxTriples = 12, .blankSubjects = 0.5};
    Graph a = testing::randomGraph(rng, shape);
    // A relabelled copy is always isomorphic.
    Graph renamed;
    auto rename = [](const Term& t) -> Term {
      return t.isBlank() ? Term(BlankNode{"r" + t.blank().label}) : t;
    };
    for (const auto& t : a.triples()) renamed.insert(Triple(rename(t.subject()), t.predicate(), rename(t.object())));
    EXPECT_TRUE(isomorphic(a, renamed));
    Graph b = testing::randomGraph(rng, shape);
    EXPECT_EQ(isomorphic(a, b), testing::bruteIsomorphic(a, b));
  }
}

TEST(Graph, IsomorphismDistinguishesBlankStructure) {
  // Two blanks each pointing at themselves vs pointing at each other.
  Graph a;
  a.insert(Triple(BlankNode{"a"}, exPredicate(0), BlankNode{"a"}));
  a.insert(Triple(BlankNode{"b"}, exPredicate(0), BlankNode{"b"}));
  Graph b;
  b.insert(Triple(BlankNode{"a"}, exPredicate(0), BlankNode{"b"}));
  b.insert(Triple(BlankNode{"b"}, exPredicate(0), BlankNode{"a"}));
  EXPECT_FALSE(isomorphic(a, b));
  EXPECT_FALSE(testing::bruteIsomorphic(a, b));
}

}  // namespace
}  // namespace ccai
