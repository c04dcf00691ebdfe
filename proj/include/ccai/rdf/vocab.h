// Namespaces and frequently used terms.

#pragma once

#include <string>
#include <string_view>

#include "ccai/rdf/term.h"

namespace ccai::vocab {

inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kCcai = "http://gamaizer.ai/ccai#";

inline Iri inNamespace(std::string_view ns, std::string_view local) {
  std::string value(ns);
  value.append(local);
  return Iri(value);
}

inline Iri rdf(std::string_view local) { return inNamespace(kRdf, local); }
inline Iri rdfs(std::string_view local) { return inNamespace(kRdfs, local); }
inline Iri owl(std::string_view local) { return inNamespace(kOwl, local); }
inline Iri xsd(std::string_view local) { return inNamespace(kXsd, local); }
inline Iri prov(std::string_view local) { return inNamespace(kProv, local); }
inline Iri foaf(std::string_view local) { return inNamespace(kFoaf, local); }
inline Iri ccai(std::string_view local) { return inNamespace(kCcai, local); }

inline const Iri& rdfType() {
  static const Iri iri = rdf("type");
  return iri;
}
inline const Iri& xsdString() {
  static const Iri iri = xsd("string");
  return iri;
}
inline const Iri& rdfLangString() {
  static const Iri iri = rdf("langString");
  return iri;
}

inline bool inNamespace(const Iri& iri, std::string_view ns) {
  return iri.view().starts_with(ns);
}

}  // namespace ccai::vocab
