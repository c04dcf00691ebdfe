#include "ccai/rdf/graph.h"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace ccai {

namespace detail {

namespace {

// Compares `t` against a partial key over the ordered components `first`,
// `second`, `third`; a null key component ends the comparison as equal.
template <typename A, typename B, typename C>
std::strong_ordering comparePrefix(const A& a, const A* ka, const B& b,
                                   const B* kb, const C& c, const C* kc) {
  if (ka == nullptr) return std::strong_ordering::equal;
  if (auto r = a <=> *ka; r != 0) return r;
  if (kb == nullptr) return std::strong_ordering::equal;
  if (auto r = b <=> *kb; r != 0) return r;
  if (kc == nullptr) return std::strong_ordering::equal;
  return c <=> *kc;
}

std::strong_ordering spo(const Triple& t, const PartialKey& k) {
  return comparePrefix(t.subject(), k.subject, t.predicate(), k.predicate,
                       t.object(), k.object);
}
std::strong_ordering pos(const Triple& t, const PartialKey& k) {
  return comparePrefix(t.predicate(), k.predicate, t.object(), k.object,
                       t.subject(), k.subject);
}
std::strong_ordering osp(const Triple& t, const PartialKey& k) {
  return comparePrefix(t.object(), k.object, t.subject(), k.subject,
                       t.predicate(), k.predicate);
}

}  // namespace

bool SpoLess::operator()(const Triple& a, const Triple& b) const {
  return a < b;
}
bool SpoLess::operator()(const Triple& a, const PartialKey& k) const {
  return spo(a, k) < 0;
}
bool SpoLess::operator()(const PartialKey& k, const Triple& a) const {
  return spo(a, k) > 0;
}

bool PosLess::operator()(const Triple& a, const Triple& b) const {
  if (auto r = a.predicate() <=> b.predicate(); r != 0) return r < 0;
  if (auto r = a.object() <=> b.object(); r != 0) return r < 0;
  return a.subject() < b.subject();
}
bool PosLess::operator()(const Triple& a, const PartialKey& k) const {
  return pos(a, k) < 0;
}
bool PosLess::operator()(const PartialKey& k, const Triple& a) const {
  return pos(a, k) > 0;
}

bool OspLess::operator()(const Triple& a, const Triple& b) const {
  if (auto r = a.object() <=> b.object(); r != 0) return r < 0;
  if (auto r = a.subject() <=> b.subject(); r != 0) return r < 0;
  return a.predicate() < b.predicate();
}
bool OspLess::operator()(const Triple& a, const PartialKey& k) const {
  return osp(a, k) < 0;
}
bool OspLess::operator()(const PartialKey& k, const Triple& a) const {
  return osp(a, k) > 0;
}

}  // namespace detail

bool Graph::insert(const Triple& triple) {
  if (!spo_.insert(triple).second) return false;
  pos_.insert(triple);
  osp_.insert(triple);
  return true;
}

bool Graph::remove(const Triple& triple) {
  if (spo_.erase(triple) == 0) return false;
  pos_.erase(triple);
  osp_.erase(triple);
  return true;
}

bool Graph::contains(const Triple& triple) const {
  return spo_.find(triple) != spo_.end();
}

namespace {

template <typename Set>
void scan(const Set& set, const detail::PartialKey& key, const Term* s,
          const Iri* p, const Term* o, const Graph::Callback& visit) {
  auto [begin, end] = set.equal_range(key);
  for (auto it = begin; it != end; ++it) {
    // The index prefix may not cover every bound position (e.g. S and O
    // bound but P free in SPO order), so re-check all of them.
    if (s != nullptr && it->subject() != *s) continue;
    if (p != nullptr && it->predicate() != *p) continue;
    if (o != nullptr && it->object() != *o) continue;
    visit(*it);
  }
}

}  // namespace

void Graph::forEachMatch(const Term* s, const Iri* p, const Term* o,
                         const Callback& visit) const {
  if (s != nullptr && s->isLiteral()) return;
  if (s != nullptr) {
    if (p != nullptr) {
      scan(spo_, {s, p, o}, s, p, o, visit);
    } else if (o != nullptr) {
      scan(osp_, {s, nullptr, o}, s, p, o, visit);
    } else {
      scan(spo_, {s, nullptr, nullptr}, s, p, o, visit);
    }
  } else if (p != nullptr) {
    scan(pos_, {nullptr, p, o}, s, p, o, visit);
  } else if (o != nullptr) {
    scan(osp_, {nullptr, nullptr, o}, s, p, o, visit);
  } else {
    for (const auto& t : spo_) visit(t);
  }
}

void Graph::forEachMatch(const std::optional<Term>& subject,
                         const std::optional<Iri>& predicate,
                         const std::optional<Term>& object,
                         const Callback& visit) const {
  forEachMatch(subject ? &*subject : nullptr,
               predicate ? &*predicate : nullptr, object ? &*object : nullptr,
               visit);
}

std::vector<Triple> Graph::match(const std::optional<Term>& subject,
                                 const std::optional<Iri>& predicate,
                                 const std::optional<Term>& object) const {
  std::vector<Triple> out;
  forEachMatch(subject, predicate, object,
               [&](const Triple& t) { out.push_back(t); });
  return out;
}

std::size_t Graph::insertAll(const Graph& other) {
  std::size_t added = 0;
  for (const auto& t : other.spo_) added += insert(t) ? 1 : 0;
  return added;
}

std::set<std::string> Graph::blankLabels() const {
  std::set<std::string> labels;
  for (const auto& t : spo_) {
    if (t.subject().isBlank()) labels.insert(t.subject().blank().label);
    if (t.object().isBlank()) labels.insert(t.object().blank().label);
  }
  return labels;
}

Graph merge(const Graph& graph, const Graph& other) {
  Graph result = graph;
  result.prefixes().mergeFrom(other.prefixes());

  const auto existing = graph.blankLabels();
  auto taken = existing;
  auto incoming = other.blankLabels();
  taken.insert(incoming.begin(), incoming.end());
  std::map<std::string, std::string> renamed;
  std::size_t counter = 0;
  for (const auto& label : incoming) {
    if (existing.count(label) == 0) continue;
    std::string fresh;
    do {
      fresh = label + "_" + std::to_string(++counter);
    } while (taken.count(fresh) != 0);
    taken.insert(fresh);
    renamed.emplace(label, fresh);
  }

  auto relabel = [&](const Term& term) -> Term {
    if (!term.isBlank()) return term;
    auto it = renamed.find(term.blank().label);
    if (it == renamed.end()) return term;
    return BlankNode{it->second};
  };
  for (const auto& t : other.triples()) {
    result.insert(Triple(relabel(t.subject()), t.predicate(),
                         relabel(t.object())));
  }
  return result;
}

namespace {

// Blank-node colour refinement followed by a backtracking search for a
// bijection among equally coloured nodes.
class IsomorphismSearch {
 public:
  IsomorphismSearch(const Graph& a, const Graph& b) : a_(a), b_(b) {}

  bool run() {
    if (a_.size() != b_.size()) return false;
    for (const auto& t : a_.triples()) {
      bool ground = !t.subject().isBlank() && !t.object().isBlank();
      if (ground) {
        if (!b_.contains(t)) return false;
      } else {
        blankTriplesA_.push_back(&t);
      }
    }
    for (const auto& t : b_.triples()) {
      if (t.subject().isBlank() || t.object().isBlank()) {
        blankTriplesB_.push_back(&t);
      }
    }
    if (blankTriplesA_.size() != blankTriplesB_.size()) return false;

    auto labelsA = a_.blankLabels();
    auto labelsB = b_.blankLabels();
    if (labelsA.size() != labelsB.size()) return false;

    colorsA_ = refine(labelsA, blankTriplesA_);
    colorsB_ = refine(labelsB, blankTriplesB_);
    std::multiset<std::size_t> ca, cb;
    for (auto& [_, c] : colorsA_) ca.insert(c);
    for (auto& [_, c] : colorsB_) cb.insert(c);
    if (ca != cb) return false;

    order_.assign(labelsA.begin(), labelsA.end());
    // Most constrained (rarest colour) first.
    std::map<std::size_t, std::size_t> frequency;
    for (auto c : ca) ++frequency[c];
    std::stable_sort(order_.begin(), order_.end(),
                     [&](const std::string& x, const std::string& y) {
                       return frequency[colorsA_[x]] < frequency[colorsA_[y]];
                     });
    for (const auto& label : labelsB) byColorB_[colorsB_[label]].push_back(label);
    return assign(0);
  }

 private:
  using Colors = std::unordered_map<std::string, std::size_t>;

  static std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  }

  static Colors refine(const std::set<std::string>& labels,
                       const std::vector<const Triple*>& triples) {
    Colors colors;
    for (const auto& l : labels) colors[l] = 1;
    for (std::size_t round = 0; round < labels.size() + 1; ++round) {
      std::unordered_map<std::string, std::vector<std::size_t>> signatures;
      for (const Triple* t : triples) {
        auto termColor = [&](const Term& term) -> std::size_t {
          return term.isBlank() ? mix(7, colors[term.blank().label])
                                : term.hash();
        };
        std::size_t p = t->predicate().hash();
        if (t->subject().isBlank()) {
          signatures[t->subject().blank().label].push_back(
              mix(mix(1, p), termColor(t->object())));
        }
        if (t->object().isBlank()) {
          signatures[t->object().blank().label].push_back(
              mix(mix(2, p), termColor(t->subject())));
        }
      }
      Colors next;
      for (const auto& l : labels) {
        auto& sig = signatures[l];
        std::sort(sig.begin(), sig.end());
        std::size_t c = colors[l];
        for (auto s : sig) c = mix(c, s);
        next[l] = c;
      }
      if (next == colors) break;
      colors = std::move(next);
    }
    return colors;
  }

  Term mapped(const Term& term) const {
    if (!term.isBlank()) return term;
    auto it = mapping_.find(term.blank().label);
    return BlankNode{it->second};
  }

  bool consistent() const {
    for (const Triple* t : blankTriplesA_) {
      auto known = [&](const Term& term) {
        return !term.isBlank() || mapping_.count(term.blank().label) != 0;
      };
      if (!known(t->subject()) || !known(t->object())) continue;
      if (!b_.contains(
              Triple(mapped(t->subject()), t->predicate(), mapped(t->object())))) {
        return false;
      }
    }
    return true;
  }

  bool assign(std::size_t index) {
    if (index == order_.size()) return consistent();
    const auto& label = order_[index];
    for (const auto& candidate : byColorB_[colorsA_[label]]) {
      if (used_.count(candidate) != 0) continue;
      mapping_[label] = candidate;
      used_.insert(candidate);
      if (consistent() && assign(index + 1)) return true;
      used_.erase(candidate);
      mapping_.erase(label);
    }
    return false;
  }

  const Graph& a_;
  const Graph& b_;
  std::vector<const Triple*> blankTriplesA_, blankTriplesB_;
  Colors colorsA_, colorsB_;
  std::vector<std::string> order_;
  std::map<std::size_t, std::vector<std::string>> byColorB_;
  std::unordered_map<std::string, std::string> mapping_;
  std::set<std::string> used_;
};

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  return IsomorphismSearch(a, b).run();
}

}  // namespace ccai
