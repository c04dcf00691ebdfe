// Character cursor with line/column tracking shared by the Turtle and SPARQL
// readers. Private to the library.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace ccai::detail {

class TextCursor {
 public:
  struct Position {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
  };

  explicit TextCursor(std::string_view text) : text_(text) {}

  bool eof() const { return pos_.offset >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    auto i = pos_.offset + ahead;
    return i < text_.size() ? text_[i] : '\0';
  }
  char get();
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && !eof(); ++i) get();
  }

  bool startsWith(std::string_view s) const {
    return text_.substr(pos_.offset).starts_with(s);
  }
  // Case-insensitive keyword match followed by a non-name character.
  bool atKeyword(std::string_view keyword) const;

  const Position& position() const { return pos_; }
  void reset(const Position& p) { pos_ = p; }
  std::string_view text() const { return text_; }

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void failAt(const Position& at,
                           const std::string& message) const;
  std::string snippetAt(std::size_t offset) const;

  // Skips blanks and `#` comments up to end of line.
  void skipWhitespaceAndComments();

  // Reads `<...>` and returns the IRI text with \u escapes decoded.
  std::string readIriRef();

  // Reads a "..." / '...' / """...""" / '''...''' literal body, decoding
  // escapes. The cursor must be on the opening quote.
  std::string readQuotedString();

  // Reads an integer, decimal or double and returns the matching xsd local
  // name ("integer", "decimal", "double"); `text` receives the lexical form.
  const char* readNumber(std::string& text);

 private:
  std::uint32_t readHex(std::size_t digits);

  std::string_view text_;
  Position pos_;
};

void appendUtf8(std::string& out, std::uint32_t codepoint);

bool isNameStartChar(char c);
bool isNameChar(char c);

}  // namespace ccai::detail
