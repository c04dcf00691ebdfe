#include "ccai/rdf/term.h"

#include <cctype>
#include <mutex>
#include <unordered_set>

#include "ccai/error.h"
#include "ccai/rdf/vocab.h"

namespace ccai {

namespace {

// Interned IRI strings live for the whole process; node-based storage keeps
// the addresses stable.
class IriInterner {
 public:
  const std::string* intern(std::string_view value) {
    std::lock_guard lock(mutex_);
    auto it = values_.find(value);
    if (it == values_.end()) it = values_.emplace(value).first;
    return &*it;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::mutex mutex_;
  std::unordered_set<std::string, Hash, std::equal_to<>> values_;
};

IriInterner& interner() {
  static IriInterner instance;
  return instance;
}

std::size_t combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column,
                       std::string message, std::string snippet)
    : Error("line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": " + message +
            (snippet.empty() ? "" : " near '" + snippet + "'")),
      line_(line),
      column_(column),
      message_(std::move(message)),
      snippet_(std::move(snippet)) {}

UnsupportedFeature::UnsupportedFeature(std::size_t line, std::size_t column,
                                       std::string construct)
    : ParseError(line, column, "unsupported feature: " + construct, construct),
      construct_(std::move(construct)) {}

Iri::Iri(std::string_view value) {
  if (value.empty()) throw InvalidTerm("IRI must not be empty");
  for (char c : value) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw InvalidTerm("IRI contains whitespace: '" + std::string(value) +
                        "'");
    }
  }
  value_ = interner().intern(value);
}

Literal::Literal(std::string lexical)
    : Literal(std::move(lexical), vocab::xsdString(), {}) {}

Literal::Literal(std::string lexical, Iri datatype)
    : Literal(std::move(lexical), std::move(datatype), {}) {
  if (datatype_ == vocab::rdfLangString()) {
    throw InvalidTerm("rdf:langString literal requires a language tag");
  }
}

Literal::Literal(std::string lexical, Iri datatype, std::string language)
    : lexical_(std::move(lexical)),
      datatype_(std::move(datatype)),
      language_(std::move(language)) {}

Literal Literal::withLanguage(std::string lexical, std::string language) {
  if (language.empty()) throw InvalidTerm("empty language tag");
  for (auto& c : language) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return Literal(std::move(lexical), vocab::rdfLangString(),
                 std::move(language));
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.lexical_ <=> b.lexical_; c != 0) return c;
  if (auto c = a.datatype_ <=> b.datatype_; c != 0) return c;
  return a.language_ <=> b.language_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.value_.index() <=> b.value_.index(); c != 0) return c;
  return std::visit(
      [&](const auto& left) -> std::strong_ordering {
        using T = std::decay_t<decltype(left)>;
        return left <=> std::get<T>(b.value_);
      },
      a.value_);
}

std::size_t Term::hash() const {
  std::size_t seed = value_.index();
  return std::visit(
      [&](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Iri>) {
          return combine(seed, v.hash());
        } else if constexpr (std::is_same_v<T, Literal>) {
          seed = combine(seed, std::hash<std::string>{}(v.lexical()));
          seed = combine(seed, v.datatype().hash());
          return combine(seed, std::hash<std::string>{}(v.language()));
        } else {
          return combine(seed, std::hash<std::string>{}(v.label));
        }
      },
      value_);
}

std::string escapeStringLiteral(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Term::toNTriples() const {
  if (isIri()) return "<" + iri().str() + ">";
  if (isBlank()) return "_:" + blank().label;
  const auto& lit = literal();
  std::string out = "\"" + escapeStringLiteral(lit.lexical()) + "\"";
  if (lit.hasLanguage()) {
    out += "@" + lit.language();
  } else if (lit.datatype() != vocab::xsdString()) {
    out += "^^<" + lit.datatype().str() + ">";
  }
  return out;
}

Triple::Triple(Term subject, Iri predicate, Term object)
    : subject_(std::move(subject)),
      predicate_(std::move(predicate)),
      object_(std::move(object)) {
  if (subject_.isLiteral()) {
    throw InvalidTerm("literal in subject position: " + subject_.toNTriples());
  }
}

std::string Triple::toNTriples() const {
  return subject_.toNTriples() + " <" + predicate_.str() + "> " +
         object_.toNTriples() + " .";
}

std::size_t Triple::hash() const {
  std::size_t seed = subject_.hash();
  seed = combine(seed, predicate_.hash());
  return combine(seed, object_.hash());
}

}  // namespace ccai
