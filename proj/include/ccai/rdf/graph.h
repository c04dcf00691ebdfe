// In-memory triple store with set semantics and pattern matching.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccai/rdf/prefix_map.h"
#include "ccai/rdf/term.h"

namespace ccai {

namespace detail {

// Partial key for range lookups: a null pointer leaves that component (and
// all following ones in index order) unconstrained.
struct PartialKey {
  const Term* subject = nullptr;
  const Iri* predicate = nullptr;
  const Term* object = nullptr;
};

struct SpoLess {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const;
  bool operator()(const Triple& a, const PartialKey& k) const;
  bool operator()(const PartialKey& k, const Triple& a) const;
};
struct PosLess {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const;
  bool operator()(const Triple& a, const PartialKey& k) const;
  bool operator()(const PartialKey& k, const Triple& a) const;
};
struct OspLess {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const;
  bool operator()(const Triple& a, const PartialKey& k) const;
  bool operator()(const PartialKey& k, const Triple& a) const;
};

}  // namespace detail

// A set of triples plus the prefix bindings it was authored with.
//
// Three sorted indexes (SPO, POS, OSP) answer every combination of bound
// positions with a single range scan. Const member functions may run
// concurrently; mutation requires exclusive access. Triple references handed
// to match callbacks stay valid until the graph is next mutated.
class Graph {
 public:
  using Callback = std::function<void(const Triple&)>;

  Graph() = default;

  // Returns true if the triple was not present before.
  bool insert(const Triple& triple);
  // Returns true if the triple was present.
  bool remove(const Triple& triple);
  bool contains(const Triple& triple) const;

  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  // Calls `visit` for every triple agreeing with all bound positions.
  void forEachMatch(const std::optional<Term>& subject,
                    const std::optional<Iri>& predicate,
                    const std::optional<Term>& object,
                    const Callback& visit) const;
  // Pointer form used by the query engine; null means unbound.
  void forEachMatch(const Term* subject, const Iri* predicate,
                    const Term* object, const Callback& visit) const;

  std::vector<Triple> match(const std::optional<Term>& subject,
                            const std::optional<Iri>& predicate,
                            const std::optional<Term>& object) const;

  // All triples in SPO order.
  const std::set<Triple, detail::SpoLess>& triples() const { return spo_; }

  PrefixMap& prefixes() { return prefixes_; }
  const PrefixMap& prefixes() const { return prefixes_; }

  // Inserts every triple of `other` verbatim (no blank-node renaming).
  std::size_t insertAll(const Graph& other);

  // Labels of all blank nodes in subject or object position.
  std::set<std::string> blankLabels() const;

  // Triple-set equality; prefixes are not compared.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.spo_ == b.spo_;
  }

 private:
  std::set<Triple, detail::SpoLess> spo_;
  std::set<Triple, detail::PosLess> pos_;
  std::set<Triple, detail::OspLess> osp_;
  PrefixMap prefixes_;
};

// Union of two graphs. Blank nodes of `other` whose labels occur in `graph`
// are relabelled so they stay distinct; prefixes are unioned with `graph`
// taking precedence.
Graph merge(const Graph& graph, const Graph& other);

// Graph isomorphism: equal up to a bijective relabelling of blank nodes.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace ccai
