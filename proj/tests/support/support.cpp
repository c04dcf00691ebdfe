#include "support/support.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ccai/rdf/vocab.h"

namespace ccai::testing {

namespace {

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Literal randomLiteral(Rng& rng) {
  switch (pick(rng, 4)) {
    case 0: return Literal("v" + std::to_string(pick(rng, 4)));
    case 1: return Literal(std::to_string(pick(rng, 3)), vocab::xsd("integer"));
    case 2: return Literal::withLanguage("w" + std::to_string(pick(rng, 2)), pick(rng, 2) ? "en" : "de");
    default: return Literal("2025-03-0" + std::to_string(1 + pick(rng, 3)), vocab::xsd("date"));
  }
}

}  // namespace

Iri exNode(int k) { return Iri("http://ex.org/n" + std::to_string(k)); }
Iri exPredicate(int k) { return Iri("http://ex.org/p" + std::to_string(k)); }

Graph randomGraph(Rng& rng, const GraphShape& shape) {
  Graph g;
  int target = pick(rng, shape.maxTriples + 1);
  auto node = [&](double blank) -> Term {
    int k = pick(rng, shape.nodes);
    if (chance(rng, blank)) return BlankNode{"b" + std::to_string(k)};
    return exNode(k);
  };
  for (int i = 0; i < target * 2 && static_cast<int>(g.size()) < target; ++i) {
    Term s = node(shape.blankSubjects);
    Iri p = exPredicate(pick(rng, shape.predicates));
    Term o = chance(rng, shape.literalObjects) ? Term(randomLiteral(rng)) : node(shape.blankSubjects);
    g.insert(Triple(s, p, o));
  }
  return g;
}

namespace {

struct QueryGen {
  Rng& rng;
  const GraphShape& shape;
  std::vector<std::string> vars{"a", "b", "c", "d"};
  int predicateVars = 0;

  std::string var() { return "?" + vars[pick(rng, static_cast<int>(vars.size()))]; }

  std::string node() {
    int k = pick(rng, shape.nodes);
    return chance(rng, 0.5) ? "ex:n" + std::to_string(k) : "<http://ex.org/n" + std::to_string(k) + ">";
  }

  std::string literal() {
    switch (pick(rng, 3)) {
      case 0: return "\"v" + std::to_string(pick(rng, 4)) + "\"";
      case 1: return std::to_string(pick(rng, 3));
      default: return "\"w" + std::to_string(pick(rng, 2)) + "\"@en";
    }
  }

  std::string triple() {
    std::string s = chance(rng, 0.8) ? var() : (chance(rng, 0.8) ? node() : "_:q" + std::to_string(pick(rng, 2)));
    std::string p;
    if (predicateVars == 0 && chance(rng, 0.1)) {
      ++predicateVars;
      p = "?p";
    } else {
      p = "ex:p" + std::to_string(pick(rng, shape.predicates));
    }
    std::string o;
    double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (r < 0.7) {
      o = var();
    } else if (r < 0.85) {
      o = node();
    } else {
      o = literal();
    }
    return s + " " + p + " " + o + " .";
  }

  std::string values() {
    int width = 1 + pick(rng, 2);
    std::vector<std::string> vs;
    while (static_cast<int>(vs.size()) < width) {
      auto v = var();
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    std::string out = "VALUES ";
    if (width == 1 && chance(rng, 0.5)) {
      out += vs[0] + " {";
      for (int r = 0, n = 1 + pick(rng, 3); r < n; ++r) out += " " + node();
      return out + " }";
    }
    out += "(";
    for (const auto& v : vs) out += " " + v;
    out += " ) {";
    for (int r = 0, n = 1 + pick(rng, 3); r < n; ++r) {
      out += " (";
      for (int c = 0; c < width; ++c) out += chance(rng, 0.2) ? " UNDEF" : " " + node();
      out += " )";
    }
    return out + " }";
  }

  std::string group(int depth) {
    std::string out = "{ ";
    int n = 1 + pick(rng, 3);
    for (int i = 0; i < n; ++i) {
      int kind = depth >= 2 ? 0 : pick(rng, 10);
      if (kind <= 5 || i == 0) {
        out += triple() + " ";
      } else if (kind == 6) {
        out += "OPTIONAL " + group(depth + 1) + " ";
      } else if (kind == 7) {
        out += group(depth + 1) + " UNION " + group(depth + 1) + " ";
      } else if (kind == 8) {
        out += values() + " ";
      } else {
        out += group(depth + 1) + " ";
      }
    }
    return out + "}";
  }
};

}  // namespace

std::string randomQuery(Rng& rng, const GraphShape& shape) {
  QueryGen gen{rng, shape};
  std::string body = gen.group(0);
  std::vector<std::string> mentioned;
  for (std::string v : {"a", "b", "c", "d", "p"}) {
    if (body.find("?" + v) != std::string::npos) mentioned.push_back(v);
  }
  std::shuffle(mentioned.begin(), mentioned.end(), rng);
  std::size_t keep = mentioned.empty() ? 0 : 1 + pick(rng, static_cast<int>(mentioned.size()));
  std::string projection;
  for (std::size_t i = 0; i < keep; ++i) projection += " ?" + mentioned[i];
  if (projection.empty()) projection = " ?a";
  return std::string("PREFIX ex: <http://ex.org/>\nSELECT ") + (chance(rng, 0.3) ? "DISTINCT" : "") +
         projection + " WHERE " + body;
}

namespace {

using Mapping = std::map<std::string, Term>;
using Multiset = std::vector<Mapping>;

bool compatible(const Mapping& a, const Mapping& b) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end() && !(it->second == v)) return false;
  }
  return true;
}

Mapping unite(Mapping a, const Mapping& b) {
  for (const auto& kv : b) a.insert(kv);
  return a;
}

Multiset join(const Multiset& l, const Multiset& r) {
  Multiset out;
  for (const auto& a : l) {
    for (const auto& b : r) {
      if (compatible(a, b)) out.push_back(unite(a, b));
    }
  }
  return out;
}

Multiset leftJoin(const Multiset& l, const Multiset& r) {
  Multiset out;
  for (const auto& a : l) {
    bool any = false;
    for (const auto& b : r) {
      if (compatible(a, b)) {
        out.push_back(unite(a, b));
        any = true;
      }
    }
    if (!any) out.push_back(a);
  }
  return out;
}

bool bindSlot(Mapping& m, const sparql::PatternTerm& slot, const Term& value) {
  if (const auto* t = std::get_if<Term>(&slot)) return *t == value;
  const auto& name = std::get<sparql::Variable>(slot).name;
  auto [it, inserted] = m.emplace(name, value);
  return inserted || it->second == value;
}

Multiset matchPattern(const Graph& g, const sparql::TriplePattern& tp) {
  Multiset out;
  for (const auto& t : g.triples()) {
    Mapping m;
    if (bindSlot(m, tp.subject, t.subject()) && bindSlot(m, tp.predicate, Term(t.predicate())) &&
        bindSlot(m, tp.object, t.object())) {
      out.push_back(std::move(m));
    }
  }
  return out;
}

Multiset evalGroup(const Graph& g, const sparql::GroupPattern& group) {
  Multiset acc{Mapping{}};
  for (const auto& e : group.elements) {
    if (const auto* tp = std::get_if<sparql::TriplePattern>(&e)) {
      acc = join(acc, matchPattern(g, *tp));
    } else if (const auto* opt = std::get_if<sparql::OptionalPattern>(&e)) {
      acc = leftJoin(acc, evalGroup(g, *opt->group));
    } else if (const auto* un = std::get_if<sparql::UnionPattern>(&e)) {
      Multiset all;
      for (const auto& arm : un->arms) {
        auto part = evalGroup(g, arm);
        all.insert(all.end(), part.begin(), part.end());
      }
      acc = join(acc, all);
    } else if (const auto* vals = std::get_if<sparql::ValuesPattern>(&e)) {
      Multiset rows;
      for (const auto& row : vals->rows) {
        Mapping m;
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (row[i]) m.emplace(vals->variables[i].name, *row[i]);
        }
        rows.push_back(std::move(m));
      }
      acc = join(acc, rows);
    } else if (const auto* nested = std::get_if<sparql::NestedGroup>(&e)) {
      acc = join(acc, evalGroup(g, *nested->group));
    }
  }
  return acc;
}

}  // namespace

std::vector<sparql::Binding> bruteForce(const Graph& graph, const sparql::Query& query) {
  std::vector<sparql::Binding> rows;
  for (const auto& m : evalGroup(graph, query.pattern)) {
    sparql::Binding b;
    for (const auto& v : query.variables) {
      auto it = m.find(v);
      b.push_back(it == m.end() ? std::nullopt : std::optional<Term>(it->second));
    }
    rows.push_back(std::move(b));
  }
  std::sort(rows.begin(), rows.end());
  if (query.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

std::vector<sparql::Binding> sortedRows(sparql::SolutionSequence s) {
  std::sort(s.rows.begin(), s.rows.end());
  return s.rows;
}

bool bruteIsomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  auto la = a.blankLabels();
  auto lb = b.blankLabels();
  if (la.size() != lb.size()) return false;
  std::vector<std::string> from(la.begin(), la.end());
  std::vector<std::string> to(lb.begin(), lb.end());
  auto rename = [](const Term& t, const std::map<std::string, std::string>& m) -> Term {
    if (!t.isBlank()) return t;
    return BlankNode{m.at(t.blank().label)};
  };
  do {
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
    bool ok = true;
    for (const auto& t : a.triples()) {
      if (!b.contains(Triple(rename(t.subject(), m), t.predicate(), rename(t.object(), m)))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

std::string dataPath(const std::string& relative) { return std::string(CCAI_DATA_DIR) + "/" + relative; }

std::string readText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ccai::testing
