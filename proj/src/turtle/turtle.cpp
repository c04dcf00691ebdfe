#include "ccai/turtle/turtle.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "ccai/error.h"
#include "ccai/rdf/vocab.h"
#include "common/text_cursor.h"

namespace ccai {

namespace {

using detail::isNameChar;
using detail::isNameStartChar;
using detail::TextCursor;

bool hasScheme(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) {
    return false;
  }
  for (char c : iri) {
    if (c == ':') return true;
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' ||
          c == '-' || c == '.')) {
      return false;
    }
  }
  return false;
}

// Minimal reference resolution: fragments, absolute paths and relative
// paths against the directory of the base.
std::string resolve(std::string_view base, std::string_view ref) {
  if (ref.empty()) return std::string(base.substr(0, base.find('#')));
  if (ref.front() == '#') {
    return std::string(base.substr(0, base.find('#'))) + std::string(ref);
  }
  if (ref.front() == '/') {
    auto schemeEnd = base.find("://");
    auto authorityEnd = schemeEnd == std::string_view::npos
                            ? std::string_view::npos
                            : base.find('/', schemeEnd + 3);
    return std::string(base.substr(0, authorityEnd)) + std::string(ref);
  }
  auto slash = base.rfind('/');
  return std::string(base.substr(0, slash + 1)) + std::string(ref);
}

class TurtleParser {
 public:
  TurtleParser(std::string_view text, std::optional<Iri> base)
      : in_(text) {
    doc_.base = std::move(base);
  }

  TurtleDocument run() {
    while (true) {
      in_.skipWhitespaceAndComments();
      if (in_.eof()) break;
      statement();
    }
    doc_.graph.prefixes() = doc_.prefixes;
    return std::move(doc_);
  }

 private:
  void statement() {
    if (in_.peek() == '@') {
      if (in_.startsWith("@prefix") && !isNameChar(in_.peek(7))) {
        in_.advance(7);
        prefixDirective();
        expectDot();
      } else if (in_.startsWith("@base") && !isNameChar(in_.peek(5))) {
        in_.advance(5);
        baseDirective();
        expectDot();
      } else {
        in_.fail("unexpected '@'");
      }
      return;
    }
    if (in_.atKeyword("PREFIX")) {
      in_.advance(6);
      prefixDirective();
      return;
    }
    if (in_.atKeyword("BASE")) {
      in_.advance(4);
      baseDirective();
      return;
    }
    triples();
    expectDot();
  }

  void prefixDirective() {
    in_.skipWhitespaceAndComments();
    auto at = in_.position();
    std::string label;
    while (!in_.eof() && in_.peek() != ':') {
      char c = in_.peek();
      if (!(isNameChar(c) || c == '.')) in_.fail("invalid prefix label");
      label += in_.get();
    }
    if (in_.eof()) in_.failAt(at, "expected ':' after prefix label");
    in_.get();
    in_.skipWhitespaceAndComments();
    if (in_.peek() != '<') in_.fail("expected <IRI> in prefix declaration");
    doc_.prefixes.bind(label, iriRefText());
  }

  void baseDirective() {
    in_.skipWhitespaceAndComments();
    if (in_.peek() != '<') in_.fail("expected <IRI> in base declaration");
    doc_.base = Iri(iriRefText());
  }

  void expectDot() {
    in_.skipWhitespaceAndComments();
    if (in_.peek() != '.') in_.fail("expected '.'");
    in_.get();
  }

  void triples() {
    if (in_.peek() == '[') {
      Term subject = blankNodePropertyList();
      in_.skipWhitespaceAndComments();
      if (in_.peek() != '.') predicateObjectList(subject);
      return;
    }
    Term subject = subjectTerm();
    predicateObjectList(subject);
  }

  Term subjectTerm() {
    char c = in_.peek();
    if (c == '_' && in_.peek(1) == ':') return labelledBlank();
    if (c == '(') in_.fail("collections are not supported");
    if (c == '"' || c == '\'' || std::isdigit(static_cast<unsigned char>(c))) {
      in_.fail("literal in subject position");
    }
    return iri();
  }

  void predicateObjectList(const Term& subject) {
    while (true) {
      in_.skipWhitespaceAndComments();
      Iri predicate = verb();
      objectList(subject, predicate);
      in_.skipWhitespaceAndComments();
      if (in_.peek() != ';') return;
      while (in_.peek() == ';') {
        in_.get();
        in_.skipWhitespaceAndComments();
      }
      char c = in_.peek();
      if (c == '.' || c == ']' || in_.eof()) return;
    }
  }

  Iri verb() {
    if (in_.peek() == 'a') {
      char next = in_.peek(1);
      if (!(isNameChar(next) || next == ':' || next == '.')) {
        in_.get();
        return vocab::rdfType();
      }
    }
    char c = in_.peek();
    if (c != '<' && !isNameStartChar(c) && c != ':') {
      in_.fail("expected predicate");
    }
    return iri();
  }

  void objectList(const Term& subject, const Iri& predicate) {
    while (true) {
      in_.skipWhitespaceAndComments();
      Term object = objectTerm();
      doc_.graph.insert(Triple(subject, predicate, object));
      in_.skipWhitespaceAndComments();
      if (in_.peek() != ',') return;
      in_.get();
    }
  }

  Term objectTerm() {
    char c = in_.peek();
    if (c == '<') return iri();
    if (c == '_' && in_.peek(1) == ':') return labelledBlank();
    if (c == '[') return blankNodePropertyList();
    if (c == '(') in_.fail("collections are not supported");
    if (c == '"' || c == '\'') return literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(in_.peek(1))))) {
      return number();
    }
    if (in_.atKeyword("true") && in_.startsWith("true")) {
      in_.advance(4);
      return Literal("true", vocab::xsd("boolean"));
    }
    if (in_.atKeyword("false") && in_.startsWith("false")) {
      in_.advance(5);
      return Literal("false", vocab::xsd("boolean"));
    }
    if (isNameStartChar(c) || c == ':') return iri();
    in_.fail("expected object");
  }

  std::string iriRefText() {
    std::string text = in_.readIriRef();
    if (hasScheme(text)) return text;
    if (!doc_.base) in_.fail("relative IRI <" + text + "> without base");
    return resolve(doc_.base->view(), text);
  }

  Iri iri() {
    auto at = in_.position();
    if (in_.peek() == '<') {
      std::string text = iriRefText();
      try {
        return Iri(text);
      } catch (const InvalidTerm& e) {
        in_.failAt(at, e.what());
      }
    }
    return prefixedName();
  }

  Iri prefixedName() {
    auto at = in_.position();
    std::string label;
    while (!in_.eof() && in_.peek() != ':') {
      char c = in_.peek();
      if (!(isNameChar(c) || c == '.')) in_.fail("expected IRI");
      label += in_.get();
    }
    if (in_.eof()) in_.failAt(at, "expected IRI");
    if (!label.empty() && label.back() == '.') in_.failAt(at, "expected IRI");
    in_.get();  // ':'
    std::string local;
    while (!in_.eof()) {
      char c = in_.peek();
      if (isNameChar(c) || c == ':' || c == '.') {
        local += in_.get();
      } else if (c == '%') {
        local += in_.get();
        for (int i = 0; i < 2; ++i) {
          if (!std::isxdigit(static_cast<unsigned char>(in_.peek()))) {
            in_.fail("invalid percent escape");
          }
          local += in_.get();
        }
      } else if (c == '\\') {
        in_.get();
        local += in_.get();
      } else {
        break;
      }
    }
    // A trailing '.' terminates the statement rather than the name.
    std::size_t giveBack = 0;
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      ++giveBack;
    }
    if (giveBack > 0) {
      auto p = in_.position();
      p.offset -= giveBack;
      p.column -= giveBack;
      in_.reset(p);
    }
    auto ns = doc_.prefixes.namespaceOf(label);
    if (!ns) throw UnknownPrefix(label);
    return Iri(*ns + local);
  }

  Term labelledBlank() {
    in_.advance(2);
    std::string label;
    char first = in_.peek();
    if (!(isNameChar(first) && first != '-')) in_.fail("invalid blank node label");
    while (!in_.eof() && (isNameChar(in_.peek()) || in_.peek() == '.')) {
      label += in_.get();
    }
    std::size_t giveBack = 0;
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      ++giveBack;
    }
    if (giveBack > 0) {
      auto p = in_.position();
      p.offset -= giveBack;
      p.column -= giveBack;
      in_.reset(p);
    }
    auto it = explicitBlanks_.find(label);
    if (it != explicitBlanks_.end()) return BlankNode{it->second};
    std::string assigned =
        usedLabels_.count(label) == 0 ? label : freshLabel();
    usedLabels_.insert(assigned);
    explicitBlanks_.emplace(label, assigned);
    return BlankNode{assigned};
  }

  std::string freshLabel() {
    std::string label;
    do {
      label = "genid" + std::to_string(++generated_);
    } while (usedLabels_.count(label) != 0 || explicitBlanks_.count(label) != 0);
    usedLabels_.insert(label);
    return label;
  }

  Term blankNodePropertyList() {
    in_.get();  // '['
    Term node = BlankNode{freshLabel()};
    in_.skipWhitespaceAndComments();
    if (in_.peek() != ']') predicateObjectList(node);
    in_.skipWhitespaceAndComments();
    if (in_.peek() != ']') in_.fail("expected ']'");
    in_.get();
    return node;
  }

  Term literal() {
    std::string lexical = in_.readQuotedString();
    if (in_.peek() == '@') {
      in_.get();
      auto at = in_.position();
      std::string lang;
      while (std::isalnum(static_cast<unsigned char>(in_.peek())) ||
             (in_.peek() == '-' && !lang.empty())) {
        lang += in_.get();
      }
      if (lang.empty()) in_.failAt(at, "expected language tag");
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

  Term number() {
    std::string text;
    const char* datatype = in_.readNumber(text);
    return Literal(std::move(text), vocab::xsd(datatype));
  }

  TextCursor in_;
  TurtleDocument doc_;
  std::map<std::string, std::string> explicitBlanks_;
  std::set<std::string> usedLabels_;
  std::size_t generated_ = 0;
};

void collectNamespacesUsed(const Iri& iri, std::set<std::string_view>& used) {
  for (const auto& [label, ns] : standardPrefixes().bindings()) {
    if (iri.view().starts_with(ns)) used.insert(label);
  }
}

}  // namespace

TurtleDocument parseTurtle(std::string_view text, std::optional<Iri> base) {
  return TurtleParser(text, std::move(base)).run();
}

std::string serializeTurtle(const TurtleDocument& doc) {
  const Graph& graph = doc.graph;

  std::set<std::string_view> usedStandard;
  for (const auto& t : graph.triples()) {
    if (t.subject().isIri()) collectNamespacesUsed(t.subject().iri(), usedStandard);
    collectNamespacesUsed(t.predicate(), usedStandard);
    if (t.object().isIri()) {
      collectNamespacesUsed(t.object().iri(), usedStandard);
    } else if (t.object().isLiteral() && !t.object().literal().hasLanguage() &&
               t.object().literal().datatype() != vocab::xsdString()) {
      collectNamespacesUsed(t.object().literal().datatype(), usedStandard);
    }
  }

  PrefixMap prefixes = doc.prefixes;
  for (auto label : usedStandard) {
    const std::string ns = *standardPrefixes().namespaceOf(label);
    bool nsBound = std::any_of(
        prefixes.bindings().begin(), prefixes.bindings().end(),
        [&](const auto& entry) { return entry.second == ns; });
    if (!nsBound) prefixes.bindIfAbsent(std::string(label), ns);
  }

  std::string out;
  for (const auto& [label, ns] : prefixes.bindings()) {
    out += "@prefix " + label + ": <" + ns + "> .\n";
  }

  auto renderIri = [&](const Iri& iri) { return prefixes.render(iri); };
  auto renderTerm = [&](const Term& term) -> std::string {
    if (term.isIri()) return renderIri(term.iri());
    if (term.isBlank()) return "_:" + term.blank().label;
    const auto& lit = term.literal();
    std::string s = "\"" + escapeStringLiteral(lit.lexical()) + "\"";
    if (lit.hasLanguage()) return s + "@" + lit.language();
    if (lit.datatype() != vocab::xsdString()) {
      return s + "^^" + renderIri(lit.datatype());
    }
    return s;
  };

  // Group subject -> predicate -> objects; the SPO index order already sorts
  // subjects and objects, only rdf:type needs to move to the front.
  const auto& triples = graph.triples();
  if (!triples.empty() && !out.empty()) out += "\n";
  for (auto it = triples.begin(); it != triples.end();) {
    const Term& subject = it->subject();
    std::map<Iri, std::vector<const Term*>> byPredicate;
    std::vector<const Term*> types;
    for (; it != triples.end() && it->subject() == subject; ++it) {
      if (it->predicate() == vocab::rdfType()) {
        types.push_back(&it->object());
      } else {
        byPredicate[it->predicate()].push_back(&it->object());
      }
    }
    out += renderTerm(subject);
    bool firstPredicate = true;
    auto emit = [&](const std::string& verb,
                    const std::vector<const Term*>& objects) {
      out += firstPredicate ? " " : " ;\n    ";
      firstPredicate = false;
      out += verb + " ";
      for (std::size_t i = 0; i < objects.size(); ++i) {
        if (i > 0) out += ", ";
        out += renderTerm(*objects[i]);
      }
    };
    if (!types.empty()) emit("a", types);
    for (const auto& [predicate, objects] : byPredicate) {
      emit(renderIri(predicate), objects);
    }
    out += " .\n";
  }
  return out;
}

std::string serializeTurtle(const Graph& graph) {
  TurtleDocument doc;
  doc.graph = graph;
  doc.prefixes = graph.prefixes();
  return serializeTurtle(doc);
}

std::string exportNTriples(const Graph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.size());
  for (const auto& t : graph.triples()) lines.push_back(t.toNTriples());
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace ccai
