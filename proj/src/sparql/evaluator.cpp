#include "ccai/sparql/evaluator.h"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ccai/sparql/parser.h"

namespace ccai::sparql {

namespace {

// Working row: one slot per variable in the query, null when unbound. Pointers
// refer into the graph's index nodes or the query's constant terms, both of
// which outlive evaluation.
using Row = std::vector<const Term*>;
using Rows = std::vector<Row>;

bool sameTerm(const Term* a, const Term* b) { return a == b || *a == *b; }

class Evaluator {
 public:
  Evaluator(const Graph& graph, const Query& query) : graph_(graph) {
    for (const auto& name : patternVariables(query.pattern)) slot(name);
    for (const auto& name : query.variables) slot(name);
  }

  std::size_t slot(const std::string& name) {
    auto [it, inserted] = slots_.emplace(name, slots_.size());
    return it->second;
  }
  std::size_t width() const { return slots_.size(); }
  std::size_t slotOf(const std::string& name) const { return slots_.at(name); }

  Rows group(const GroupPattern& g) {
    Rows current{Row(width(), nullptr)};
    std::vector<const TriplePattern*> bgp;
    auto flush = [&] {
      if (bgp.empty()) return;
      current = extendWithBgp(std::move(current), bgp);
      bgp.clear();
    };
    for (const auto& element : g.elements) {
      if (const auto* tp = std::get_if<TriplePattern>(&element)) {
        bgp.push_back(tp);
        continue;
      }
      flush();
      std::visit(
          [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, OptionalPattern>) {
              current = join(current, group(*e.group), true);
            } else if constexpr (std::is_same_v<T, NestedGroup>) {
              current = join(current, group(*e.group), false);
            } else if constexpr (std::is_same_v<T, UnionPattern>) {
              Rows all;
              for (const auto& arm : e.arms) {
                Rows part = group(arm);
                all.insert(all.end(), std::make_move_iterator(part.begin()),
                           std::make_move_iterator(part.end()));
              }
              current = join(current, all, false);
            } else if constexpr (std::is_same_v<T, ValuesPattern>) {
              current = join(current, values(e), false);
            }
          },
          element);
    }
    flush();
    return current;
  }

 private:
  struct Slotted {
    const Term* constant = nullptr;
    std::size_t slot = 0;
  };

  Slotted resolve(const PatternTerm& t) {
    if (const auto* v = std::get_if<Variable>(&t)) return {nullptr, slot(v->name)};
    return {&std::get<Term>(t), 0};
  }

  Rows values(const ValuesPattern& v) {
    Rows out;
    std::vector<std::size_t> columns;
    for (const auto& var : v.variables) columns.push_back(slot(var.name));
    for (const auto& row : v.rows) {
      Row r(width(), nullptr);
      bool ok = true;
      for (std::size_t i = 0; i < columns.size(); ++i) {
        if (!row[i]) continue;
        const Term* value = &*row[i];
        if (r[columns[i]] && !sameTerm(r[columns[i]], value)) ok = false;
        r[columns[i]] = value;
      }
      if (ok) out.push_back(std::move(r));
    }
    return out;
  }

  // Orders patterns greedily so each one shares as many bound positions as
  // possible with what came before.
  std::vector<const TriplePattern*> plan(std::vector<const TriplePattern*> bgp,
                                         std::vector<bool> bound) {
    std::vector<const TriplePattern*> ordered;
    while (!bgp.empty()) {
      auto score = [&](const TriplePattern* tp) {
        int s = 0;
        for (const auto* t : {&tp->subject, &tp->predicate, &tp->object}) {
          auto r = resolve(*t);
          if (r.constant || bound[r.slot]) s += (t == &tp->predicate) ? 1 : 2;
        }
        return s;
      };
      auto best = std::max_element(
          bgp.begin(), bgp.end(),
          [&](const auto* a, const auto* b) { return score(a) < score(b); });
      const auto* chosen = *best;
      bgp.erase(best);
      for (const auto* t : {&chosen->subject, &chosen->predicate, &chosen->object}) {
        auto r = resolve(*t);
        if (!r.constant) bound[r.slot] = true;
      }
      ordered.push_back(chosen);
    }
    return ordered;
  }

  Rows extendWithBgp(Rows input, const std::vector<const TriplePattern*>& bgp) {
    if (input.empty()) return input;
    std::vector<bool> bound(width(), true);
    for (const auto& row : input) {
      for (std::size_t i = 0; i < width(); ++i) {
        if (!row[i]) bound[i] = false;
      }
    }
    auto ordered = plan(bgp, bound);
    Rows current = std::move(input);
    for (const auto* tp : ordered) {
      Rows next;
      auto s = resolve(tp->subject);
      auto p = resolve(tp->predicate);
      auto o = resolve(tp->object);
      for (const auto& row : current) {
        const Term* sv = s.constant ? s.constant : row[s.slot];
        const Term* pv = p.constant ? p.constant : row[p.slot];
        const Term* ov = o.constant ? o.constant : row[o.slot];
        if (pv && !pv->isIri()) continue;
        if (sv && sv->isLiteral()) continue;
        const Iri* predicate = pv ? &pv->iri() : nullptr;
        graph_.forEachMatch(sv, predicate, ov, [&](const Triple& t) {
          Row r = row;
          auto bind = [&](const Slotted& x, const Term* value) {
            if (x.constant) return true;
            if (r[x.slot]) return sameTerm(r[x.slot], value);
            r[x.slot] = value;
            return true;
          };
          if (!bind(s, &t.subject())) return;
          if (!bind(p, &predicateTerm(t))) return;
          if (!bind(o, &t.object())) return;
          next.push_back(std::move(r));
        });
      }
      current = std::move(next);
      if (current.empty()) break;
    }
    return current;
  }

  // Predicates are stored as Iri; bindings need a Term. Interned per IRI so
  // the pointer stays valid for the evaluation.
  const Term& predicateTerm(const Triple& t) {
    auto it = predicateTerms_.find(t.predicate());
    if (it == predicateTerms_.end()) {
      it = predicateTerms_.emplace(t.predicate(), Term(t.predicate())).first;
    }
    return it->second;
  }

  static bool compatible(const Row& a, const Row& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] && b[i] && !sameTerm(a[i], b[i])) return false;
    }
    return true;
  }

  static Row mergeRows(const Row& a, const Row& b) {
    Row r = a;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!r[i]) r[i] = b[i];
    }
    return r;
  }

  static std::vector<std::size_t> alwaysBound(const Rows& rows, std::size_t width) {
    std::vector<bool> bound(width, true);
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < width; ++i) {
        if (!row[i]) bound[i] = false;
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < width; ++i) {
      if (bound[i]) out.push_back(i);
    }
    return out;
  }

  Rows join(const Rows& left, const Rows& right, bool leftOuter) {
    Rows out;
    if (left.empty()) return out;
    auto lb = alwaysBound(left, width());
    auto rb = alwaysBound(right, width());
    std::vector<std::size_t> keys;
    std::set_intersection(lb.begin(), lb.end(), rb.begin(), rb.end(),
                          std::back_inserter(keys));
    auto keyHash = [&](const Row& r) {
      std::size_t h = 0;
      for (auto k : keys) h = h * 31 + r[k]->hash();
      return h;
    };
    std::unordered_multimap<std::size_t, const Row*> index;
    index.reserve(right.size());
    for (const auto& r : right) index.emplace(keyHash(r), &r);
    for (const auto& l : left) {
      bool matched = false;
      auto [begin, end] = index.equal_range(keyHash(l));
      std::vector<const Row*> candidates;
      for (auto it = begin; it != end; ++it) candidates.push_back(it->second);
      // equal_range order is unspecified; keep the right side's order.
      std::sort(candidates.begin(), candidates.end());
      for (const Row* r : candidates) {
        if (!compatible(l, *r)) continue;
        out.push_back(mergeRows(l, *r));
        matched = true;
      }
      if (leftOuter && !matched) out.push_back(l);
    }
    return out;
  }

  std::map<std::string, std::size_t> slots_;
  const Graph& graph_;
  std::unordered_map<Iri, Term> predicateTerms_;
};

int compareCells(const std::optional<Term>& a, const std::optional<Term>& b) {
  if (!a || !b) return static_cast<int>(a.has_value()) - static_cast<int>(b.has_value());
  auto c = *a <=> *b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

std::optional<std::size_t> SolutionSequence::column(std::string_view variable) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == variable) return i;
  }
  return std::nullopt;
}

void SolutionSequence::sortRows() {
  std::stable_sort(rows.begin(), rows.end(), [](const Binding& a, const Binding& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      int c = compareCells(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  });
}

void SolutionSequence::removeDuplicates() {
  std::vector<Binding> kept;
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (auto& row : rows) {
    std::size_t h = 0;
    for (const auto& cell : row) h = h * 31 + (cell ? cell->hash() : 7);
    bool dup = false;
    auto [begin, end] = seen.equal_range(h);
    for (auto it = begin; it != end && !dup; ++it) dup = kept[it->second] == row;
    if (dup) continue;
    seen.emplace(h, kept.size());
    kept.push_back(std::move(row));
  }
  rows = std::move(kept);
}

SolutionSequence evaluate(const Graph& graph, const Query& query) {
  Evaluator evaluator(graph, query);
  auto rows = evaluator.group(query.pattern);
  SolutionSequence out;
  out.variables = query.variables;
  std::vector<std::size_t> columns;
  for (const auto& v : query.variables) columns.push_back(evaluator.slotOf(v));
  out.rows.reserve(rows.size());
  for (const auto& row : rows) {
    Binding b;
    b.reserve(columns.size());
    for (auto c : columns) {
      b.push_back(row[c] ? std::optional<Term>(*row[c]) : std::nullopt);
    }
    out.rows.push_back(std::move(b));
  }
  if (query.distinct) out.removeDuplicates();
  return out;
}

SolutionSequence evaluate(const Graph& graph, std::string_view queryText) {
  return evaluate(graph, parseQuery(queryText));
}

}  // namespace ccai::sparql
