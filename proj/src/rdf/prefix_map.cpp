#include "ccai/rdf/prefix_map.h"

#include <cctype>

#include "ccai/error.h"
#include "ccai/rdf/vocab.h"

namespace ccai {

void PrefixMap::bind(std::string label, std::string ns) {
  bindings_[std::move(label)] = std::move(ns);
}

bool PrefixMap::bindIfAbsent(const std::string& label, const std::string& ns) {
  return bindings_.emplace(label, ns).second;
}

std::optional<std::string> PrefixMap::namespaceOf(
    std::string_view label) const {
  auto it = bindings_.find(label);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

bool PrefixMap::contains(std::string_view label) const {
  return bindings_.find(label) != bindings_.end();
}

Iri PrefixMap::expand(std::string_view curie) const {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidTerm("not a prefixed name: '" + std::string(curie) + "'");
  }
  auto label = curie.substr(0, colon);
  auto it = bindings_.find(label);
  if (it == bindings_.end()) throw UnknownPrefix(std::string(label));
  return Iri(it->second + std::string(curie.substr(colon + 1)));
}

bool isSafeLocalName(std::string_view local) {
  if (local.empty()) return true;
  auto isNameChar = [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
  };
  unsigned char first = static_cast<unsigned char>(local.front());
  if (!(std::isalnum(first) || first == '_' || first >= 0x80)) return false;
  if (local.back() == '.') return false;
  for (unsigned char c : local) {
    if (!isNameChar(c)) return false;
  }
  return true;
}

std::optional<std::string> PrefixMap::compact(const Iri& iri) const {
  const std::string* bestLabel = nullptr;
  std::size_t bestLength = 0;
  for (const auto& [label, ns] : bindings_) {
    if (ns.size() < bestLength || !iri.view().starts_with(ns)) continue;
    if (!isSafeLocalName(iri.view().substr(ns.size()))) continue;
    if (bestLabel == nullptr || ns.size() > bestLength) {
      bestLabel = &label;
      bestLength = ns.size();
    }
  }
  if (bestLabel == nullptr) return std::nullopt;
  return *bestLabel + ":" + std::string(iri.view().substr(bestLength));
}

Iri PrefixMap::resolve(std::string_view ref) const {
  if (ref.size() >= 2 && ref.front() == '<' && ref.back() == '>') {
    return Iri(std::string(ref.substr(1, ref.size() - 2)));
  }
  if (ref.find("://") != std::string_view::npos || ref.starts_with("urn:")) {
    return Iri(std::string(ref));
  }
  return expand(ref);
}

std::string PrefixMap::render(const Iri& iri) const {
  if (auto curie = compact(iri)) return *curie;
  return "<" + iri.str() + ">";
}

void PrefixMap::mergeFrom(const PrefixMap& other) {
  for (const auto& [label, ns] : other.bindings_) bindIfAbsent(label, ns);
}

const PrefixMap& standardPrefixes() {
  static const PrefixMap map = [] {
    PrefixMap m;
    m.bind("rdf", std::string(vocab::kRdf));
    m.bind("rdfs", std::string(vocab::kRdfs));
    m.bind("owl", std::string(vocab::kOwl));
    m.bind("xsd", std::string(vocab::kXsd));
    m.bind("prov", std::string(vocab::kProv));
    m.bind("foaf", std::string(vocab::kFoaf));
    m.bind("ccai", std::string(vocab::kCcai));
    return m;
  }();
  return map;
}

}  // namespace ccai
