// RDF atoms: IRIs, literals, blank nodes, and the triples built from them.

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>

namespace ccai {

// An absolute IRI. Values are interned process-wide, so copying is a pointer
// copy and equality is a pointer comparison. Ordering is lexicographic on the
// IRI text.
class Iri {
 public:
  // Throws InvalidTerm if `value` is empty or contains whitespace.
  explicit Iri(std::string_view value);

  const std::string& str() const { return *value_; }
  std::string_view view() const { return *value_; }

  friend bool operator==(const Iri& a, const Iri& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) {
    if (a.value_ == b.value_) return std::strong_ordering::equal;
    return *a.value_ <=> *b.value_;
  }

  std::size_t hash() const { return std::hash<const void*>{}(value_); }

 private:
  const std::string* value_;
};

// A literal. Equality is exact on (lexical, datatype, language); no value
// space canonicalisation takes place ("01" and "1" differ).
class Literal {
 public:
  // Plain string literal (xsd:string).
  explicit Literal(std::string lexical);
  // Typed literal. Throws InvalidTerm when `datatype` is rdf:langString, since
  // a language-tagged literal needs a tag.
  Literal(std::string lexical, Iri datatype);

  static Literal withLanguage(std::string lexical, std::string language);

  const std::string& lexical() const { return lexical_; }
  const Iri& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }
  bool hasLanguage() const { return !language_.empty(); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);

 private:
  Literal(std::string lexical, Iri datatype, std::string language);

  std::string lexical_;
  Iri datatype_;
  std::string language_;
};

struct BlankNode {
  std::string label;

  friend bool operator==(const BlankNode&, const BlankNode&) = default;
  friend auto operator<=>(const BlankNode&, const BlankNode&) = default;
};

// Exactly one of Iri, Literal, BlankNode. Ordering puts IRIs first, then
// literals, then blank nodes.
class Term {
 public:
  Term(Iri iri) : value_(std::move(iri)) {}  // NOLINT(google-explicit-constructor)
  Term(Literal literal) : value_(std::move(literal)) {}  // NOLINT
  Term(BlankNode blank) : value_(std::move(blank)) {}  // NOLINT

  bool isIri() const { return std::holds_alternative<Iri>(value_); }
  bool isLiteral() const { return std::holds_alternative<Literal>(value_); }
  bool isBlank() const { return std::holds_alternative<BlankNode>(value_); }

  const Iri& iri() const { return std::get<Iri>(value_); }
  const Literal& literal() const { return std::get<Literal>(value_); }
  const BlankNode& blank() const { return std::get<BlankNode>(value_); }

  const std::variant<Iri, Literal, BlankNode>& variant() const {
    return value_;
  }

  // N-Triples rendering of this term.
  std::string toNTriples() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

  std::size_t hash() const;

 private:
  std::variant<Iri, Literal, BlankNode> value_;
};

// An RDF statement. The constructor rejects literal subjects, so every Triple
// value satisfies the position constraints.
class Triple {
 public:
  Triple(Term subject, Iri predicate, Term object);

  const Term& subject() const { return subject_; }
  const Iri& predicate() const { return predicate_; }
  const Term& object() const { return object_; }

  std::string toNTriples() const;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&,
                                          const Triple&) = default;

  std::size_t hash() const;

 private:
  Term subject_;
  Iri predicate_;
  Term object_;
};

// Escapes a string for use inside a double-quoted N-Triples/Turtle literal.
std::string escapeStringLiteral(std::string_view text);

}  // namespace ccai

template <>
struct std::hash<ccai::Iri> {
  std::size_t operator()(const ccai::Iri& iri) const { return iri.hash(); }
};
template <>
struct std::hash<ccai::Term> {
  std::size_t operator()(const ccai::Term& t) const { return t.hash(); }
};
template <>
struct std::hash<ccai::Triple> {
  std::size_t operator()(const ccai::Triple& t) const { return t.hash(); }
};
