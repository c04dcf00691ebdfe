#include "ccai/sparql/parser.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "ccai/error.h"
#include "ccai/rdf/vocab.h"
#include "common/text_cursor.h"

namespace ccai::sparql {

namespace {

using detail::isNameChar;
using detail::isNameStartChar;
using detail::TextCursor;

constexpr std::string_view kOpenCurly = "\xE2\x80\x9C";   // U+201C
constexpr std::string_view kCloseCurly = "\xE2\x80\x9D";  // U+201D

class QueryParser {
 public:
  QueryParser(std::string_view text, const PrefixMap& prefixes) : in_(text) {
    query_.prefixes = prefixes;
  }

  Query run() {
    prologue();
    selectClause();
    skip();
    if (in_.atKeyword("FROM")) unsupported("FROM (dataset clauses)");
    if (in_.atKeyword("WHERE")) in_.advance(5);
    skip();
    if (in_.peek() != '{') in_.fail("expected '{'");
    query_.pattern = group();
    skip();
    if (!in_.eof()) {
      static constexpr std::array<std::string_view, 6> kModifiers = {
          "ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING", "VALUES"};
      for (auto keyword : kModifiers) {
        if (in_.atKeyword(keyword)) unsupported(std::string(keyword));
      }
      in_.fail("unexpected text after query");
    }

    auto mentioned = patternVariables(query_.pattern);
    for (const auto& v : query_.variables) {
      if (std::find(mentioned.begin(), mentioned.end(), v) == mentioned.end()) {
        query_.warnings.push_back("projected variable ?" + v +
                                  " does not occur in the pattern");
      }
    }
    return std::move(query_);
  }

 private:
  [[noreturn]] void unsupported(const std::string& construct) {
    const auto& p = in_.position();
    throw UnsupportedFeature(p.line, p.column, construct);
  }

  void skip() { in_.skipWhitespaceAndComments(); }

  void prologue() {
    while (true) {
      skip();
      if (in_.atKeyword("PREFIX")) {
        in_.advance(6);
        skip();
        auto at = in_.position();
        std::string label;
        while (!in_.eof() && in_.peek() != ':') {
          char c = in_.peek();
          if (!(isNameChar(c) || c == '.')) in_.fail("invalid prefix label");
          label += in_.get();
        }
        if (in_.eof()) in_.failAt(at, "expected ':' after prefix label");
        in_.get();
        skip();
        if (in_.peek() != '<') in_.fail("expected <IRI> after PREFIX");
        prefixesDeclared_.insert(label);
        query_.prefixes.bind(label, in_.readIriRef());
      } else if (in_.atKeyword("BASE")) {
        unsupported("BASE");
      } else {
        return;
      }
    }
  }

  void selectClause() {
    for (auto form : {"CONSTRUCT", "ASK", "DESCRIBE"}) {
      if (in_.atKeyword(form)) unsupported(form);
    }
    if (!in_.atKeyword("SELECT")) in_.fail("expected SELECT");
    in_.advance(6);
    skip();
    if (in_.atKeyword("DISTINCT")) {
      in_.advance(8);
      query_.distinct = true;
      skip();
    } else if (in_.atKeyword("REDUCED")) {
      unsupported("REDUCED");
    }
    if (in_.peek() == '*') unsupported("SELECT *");
    if (in_.peek() == '(') unsupported("projection expressions");
    while (in_.peek() == '?' || in_.peek() == '$') {
      auto name = variableName();
      if (std::find(query_.variables.begin(), query_.variables.end(), name) ==
          query_.variables.end()) {
        query_.variables.push_back(name);
      }
      skip();
    }
    if (query_.variables.empty()) in_.fail("expected projected variables");
  }

  std::string variableName() {
    in_.get();  // '?' or '$'
    std::string name;
    while (!in_.eof() && isNameChar(in_.peek())) name += in_.get();
    if (name.empty()) in_.fail("expected variable name");
    return name;
  }

  GroupPattern group() {
    auto open = in_.position();
    in_.get();  // '{'
    GroupPattern result;
    while (true) {
      skip();
      if (in_.eof()) in_.failAt(open, "unterminated group pattern");
      char c = in_.peek();
      if (c == '}') {
        in_.get();
        return result;
      }
      if (c == '.') {
        in_.get();
        continue;
      }
      if (in_.atKeyword("OPTIONAL")) {
        in_.advance(8);
        skip();
        if (in_.peek() != '{') in_.fail("expected '{' after OPTIONAL");
        result.elements.emplace_back(OptionalPattern{group()});
        continue;
      }
      if (in_.atKeyword("VALUES")) {
        in_.advance(6);
        result.elements.emplace_back(valuesBlock());
        continue;
      }
      for (auto keyword : {"FILTER", "BIND", "MINUS", "SERVICE", "GRAPH"}) {
        if (in_.atKeyword(keyword)) unsupported(keyword);
      }
      if (c == '{') {
        UnionPattern alternatives;
        alternatives.arms.push_back(group());
        while (true) {
          skip();
          if (!in_.atKeyword("UNION")) break;
          in_.advance(5);
          skip();
          if (in_.peek() != '{') in_.fail("expected '{' after UNION");
          alternatives.arms.push_back(group());
        }
        if (alternatives.arms.size() == 1) {
          result.elements.emplace_back(
              NestedGroup{std::move(alternatives.arms.front())});
        } else {
          result.elements.emplace_back(std::move(alternatives));
        }
        continue;
      }
      triplesBlock(result);
      skip();
      c = in_.peek();
      if (c == '.') {
        in_.get();
      } else if (c != '}' && c != '{' && !in_.atKeyword("OPTIONAL") &&
                 !in_.atKeyword("VALUES") && !startsUnsupportedKeyword()) {
        in_.fail("expected '.' or '}'");
      }
    }
  }

  bool startsUnsupportedKeyword() const {
    for (auto keyword : {"FILTER", "BIND", "MINUS", "SERVICE", "GRAPH"}) {
      if (in_.atKeyword(keyword)) return true;
    }
    return false;
  }

  void triplesBlock(GroupPattern& out) {
    PatternTerm subject = term(Position::Subject);
    while (true) {
      skip();
      PatternTerm predicate = verb();
      while (true) {
        skip();
        PatternTerm object = term(Position::Object);
        out.elements.emplace_back(TriplePattern{subject, predicate, object});
        skip();
        if (in_.peek() != ',') break;
        in_.get();
      }
      if (in_.peek() != ';') return;
      while (in_.peek() == ';') {
        in_.get();
        skip();
      }
      char c = in_.peek();
      if (c == '.' || c == '}') return;
    }
  }

  PatternTerm verb() {
    char c = in_.peek();
    if (c == '^' || c == '!' || c == '(') unsupported("property paths");
    PatternTerm predicate = [&]() -> PatternTerm {
      if (c == 'a' && !(isNameChar(in_.peek(1)) || in_.peek(1) == ':')) {
        in_.get();
        return Term(vocab::rdfType());
      }
      if (c == '?' || c == '$') return Variable{variableName()};
      if (c == '<' || isNameStartChar(c) || c == ':') return Term(iri());
      in_.fail("expected predicate");
    }();
    char next = in_.peek();
    if (next == '/' || next == '|' || next == '*' || next == '+' ||
        (next == '?' && !isNameChar(in_.peek(1)))) {
      unsupported("property paths");
    }
    return predicate;
  }

  enum class Position { Subject, Object };

  PatternTerm term(Position position) {
    char c = in_.peek();
    if (c == '?' || c == '$') return Variable{variableName()};
    if (c == '_' && in_.peek(1) == ':') {
      in_.advance(2);
      std::string label;
      while (!in_.eof() && isNameChar(in_.peek())) label += in_.get();
      if (label.empty()) in_.fail("invalid blank node label");
      // Blank nodes in patterns behave as non-projectable variables.
      return Variable{"_:" + label};
    }
    if (c == '[') unsupported("blank node property lists");
    if (c == '(') unsupported("collections");
    if (position == Position::Object) {
      if (auto lit = literal()) return Term(std::move(*lit));
    } else if (c == '"' || c == '\'' || in_.startsWith("``") ||
               in_.startsWith(kOpenCurly)) {
      in_.fail("literal in subject position");
    }
    if (c == '<' || isNameStartChar(c) || c == ':') return Term(iri());
    in_.fail(position == Position::Subject ? "expected subject"
                                           : "expected object");
  }

  std::optional<Literal> literal() {
    char c = in_.peek();
    std::string lexical;
    if (in_.startsWith("``")) {
      lexical = readDelimited("``", "''");
    } else if (in_.startsWith(kOpenCurly)) {
      lexical = readDelimited(kOpenCurly, kCloseCurly);
    } else if (c == '"' || c == '\'') {
      lexical = in_.readQuotedString();
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' ||
               c == '-' ||
               (c == '.' && std::isdigit(static_cast<unsigned char>(in_.peek(1))))) {
      std::string text;
      const char* datatype = in_.readNumber(text);
      return Literal(std::move(text), vocab::xsd(datatype));
    } else if (in_.startsWith("true") && in_.atKeyword("true")) {
      in_.advance(4);
      return Literal("true", vocab::xsd("boolean"));
    } else if (in_.startsWith("false") && in_.atKeyword("false")) {
      in_.advance(5);
      return Literal("false", vocab::xsd("boolean"));
    } else {
      return std::nullopt;
    }
    if (in_.peek() == '@') {
      in_.get();
      std::string lang;
      while (std::isalnum(static_cast<unsigned char>(in_.peek())) ||
             (in_.peek() == '-' && !lang.empty())) {
        lang += in_.get();
      }
      if (lang.empty()) in_.fail("expected language tag");
      return Literal::withLanguage(std::move(lexical), std::move(lang));
    }
    if (in_.startsWith("^^")) {
      in_.advance(2);
      Iri datatype = iri();
      try {
        return Literal(std::move(lexical), datatype);
      } catch (const InvalidTerm& e) {
        in_.fail(e.what());
      }
    }
    return Literal(std::move(lexical));
  }

  // Typographic quoting: no escapes, content taken verbatim.
  std::string readDelimited(std::string_view open, std::string_view close) {
    auto start = in_.position();
    in_.advance(open.size());
    std::string out;
    while (!in_.startsWith(close)) {
      if (in_.eof() || in_.peek() == '\n') {
        in_.failAt(start, "unterminated string literal");
      }
      out += in_.get();
    }
    in_.advance(close.size());
    return out;
  }

  Iri iri() {
    auto at = in_.position();
    if (in_.peek() == '<') {
      std::string text = in_.readIriRef();
      try {
        return Iri(text);
      } catch (const InvalidTerm& e) {
        in_.failAt(at, e.what());
      }
    }
    std::string label;
    while (!in_.eof() && in_.peek() != ':') {
      char c = in_.peek();
      if (!(isNameChar(c) || c == '.')) in_.failAt(at, "expected IRI");
      label += in_.get();
    }
    if (in_.eof()) in_.failAt(at, "expected IRI");
    in_.get();
    std::string local;
    while (!in_.eof()) {
      char c = in_.peek();
      if (isNameChar(c) || c == ':' ||
          (c == '.' && (isNameChar(in_.peek(1)) || in_.peek(1) == ':'))) {
        local += in_.get();
      } else if (c == '\\') {
        in_.get();
        local += in_.get();
      } else {
        break;
      }
    }
    auto ns = query_.prefixes.namespaceOf(label);
    if (!ns) throw UnknownPrefix(label);
    return Iri(*ns + local);
  }

  ValuesPattern valuesBlock() {
    ValuesPattern values;
    skip();
    bool multi = false;
    if (in_.peek() == '(') {
      multi = true;
      in_.get();
      skip();
      while (in_.peek() == '?' || in_.peek() == '$') {
        values.variables.push_back(Variable{variableName()});
        skip();
      }
      if (in_.peek() != ')') in_.fail("expected ')' in VALUES");
      in_.get();
    } else if (in_.peek() == '?' || in_.peek() == '$') {
      values.variables.push_back(Variable{variableName()});
    } else {
      in_.fail("expected variable after VALUES");
    }
    skip();
    if (in_.peek() != '{') in_.fail("expected '{' in VALUES");
    in_.get();
    while (true) {
      skip();
      if (in_.peek() == '}') {
        in_.get();
        return values;
      }
      if (in_.eof()) in_.fail("unterminated VALUES block");
      std::vector<std::optional<Term>> row;
      if (multi) {
        auto rowStart = in_.position();
        if (in_.peek() != '(') in_.fail("expected '(' for VALUES row");
        in_.get();
        while (true) {
          skip();
          if (in_.peek() == ')') {
            in_.get();
            break;
          }
          row.push_back(valueCell());
        }
        if (row.size() != values.variables.size()) {
          in_.failAt(rowStart, "VALUES row arity does not match variables");
        }
      } else {
        row.push_back(valueCell());
      }
      values.rows.push_back(std::move(row));
    }
  }

  std::optional<Term> valueCell() {
    if (in_.atKeyword("UNDEF")) {
      in_.advance(5);
      return std::nullopt;
    }
    if (auto lit = literal()) return Term(std::move(*lit));
    char c = in_.peek();
    if (c == '<' || isNameStartChar(c) || c == ':') return Term(iri());
    in_.fail("expected value");
  }

  TextCursor in_;
  Query query_;
  std::set<std::string> prefixesDeclared_;
};

void collectVariables(const PatternTerm& term, std::vector<std::string>& out) {
  if (const auto* v = std::get_if<Variable>(&term)) {
    if (std::find(out.begin(), out.end(), v->name) == out.end()) {
      out.push_back(v->name);
    }
  }
}

void collectVariables(const GroupPattern& group, std::vector<std::string>& out);

void collectVariables(const PatternElement& element,
                      std::vector<std::string>& out) {
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, TriplePattern>) {
          collectVariables(e.subject, out);
          collectVariables(e.predicate, out);
          collectVariables(e.object, out);
        } else if constexpr (std::is_same_v<T, OptionalPattern> ||
                             std::is_same_v<T, NestedGroup>) {
          collectVariables(*e.group, out);
        } else if constexpr (std::is_same_v<T, UnionPattern>) {
          for (const auto& arm : e.arms) collectVariables(arm, out);
        } else {
          for (const auto& v : e.variables) {
            collectVariables(PatternTerm(v), out);
          }
        }
      },
      element);
}

void collectVariables(const GroupPattern& group,
                      std::vector<std::string>& out) {
  for (const auto& element : group.elements) collectVariables(element, out);
}

}  // namespace

std::vector<std::string> patternVariables(const GroupPattern& group) {
  std::vector<std::string> out;
  collectVariables(group, out);
  return out;
}

Query parseQuery(std::string_view text) { return parseQuery(text, PrefixMap{}); }

Query parseQuery(std::string_view text, const PrefixMap& prefixes) {
  return QueryParser(text, prefixes).run();
}

}  // namespace ccai::sparql
