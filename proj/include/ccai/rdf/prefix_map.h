#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ccai/rdf/term.h"

namespace ccai {

// Prefix label -> namespace IRI bindings. For every IRI under a bound
// namespace whose local part is a valid prefixed-name local,
// expand(*compact(iri)) == iri.
class PrefixMap {
 public:
  PrefixMap() = default;

  // Rebinding an existing label replaces it.
  void bind(std::string label, std::string ns);
  // Binds `label` only if it is not bound yet. Returns whether it was added.
  bool bindIfAbsent(const std::string& label, const std::string& ns);

  std::optional<std::string> namespaceOf(std::string_view label) const;
  bool contains(std::string_view label) const;
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  // "label:local" -> namespace + local. Throws UnknownPrefix for an unbound
  // label and InvalidTerm when `curie` has no colon.
  Iri expand(std::string_view curie) const;

  // Longest-namespace match whose remainder is a valid local name.
  std::optional<std::string> compact(const Iri& iri) const;

  // Compact form when possible, otherwise "<iri>".
  std::string render(const Iri& iri) const;

  // Accepts "<iri>", an absolute IRI ("scheme://..." or "urn:...") or a
  // CURIE. Throws UnknownPrefix or InvalidTerm.
  Iri resolve(std::string_view reference) const;

  // Union with left precedence: labels already bound here are kept.
  void mergeFrom(const PrefixMap& other);

  const std::map<std::string, std::string, std::less<>>& bindings() const {
    return bindings_;
  }

  friend bool operator==(const PrefixMap&, const PrefixMap&) = default;

 private:
  std::map<std::string, std::string, std::less<>> bindings_;
};

// rdf, rdfs, owl, xsd, prov, foaf and ccai.
const PrefixMap& standardPrefixes();

// Whether `local` can be written after "prefix:" without escaping.
bool isSafeLocalName(std::string_view local);

}  // namespace ccai
