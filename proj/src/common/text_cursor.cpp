#include "common/text_cursor.h"

#include <cctype>

#include "ccai/error.h"

namespace ccai::detail {

bool isNameStartChar(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || u >= 0x80;
}

bool isNameChar(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || u >= 0x80;
}

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

char TextCursor::get() {
  char c = text_[pos_.offset++];
  if (c == '\n') {
    ++pos_.line;
    pos_.column = 1;
  } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
    ++pos_.column;
  }
  return c;
}

bool TextCursor::atKeyword(std::string_view keyword) const {
  if (text_.size() - pos_.offset < keyword.size() || eof()) return false;
  for (std::size_t i = 0; i < keyword.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(peek(i))) !=
        std::toupper(static_cast<unsigned char>(keyword[i]))) {
      return false;
    }
  }
  char next = peek(keyword.size());
  return !(isNameChar(next) || next == ':');
}

std::string TextCursor::snippetAt(std::size_t offset) const {
  std::string out;
  for (auto i = offset; i < text_.size() && out.size() < 24; ++i) {
    if (text_[i] == '\n') break;
    out += text_[i];
  }
  return out;
}

void TextCursor::fail(const std::string& message) const {
  failAt(pos_, message);
}

void TextCursor::failAt(const Position& at, const std::string& message) const {
  throw ParseError(at.line, at.column, message, snippetAt(at.offset));
}

void TextCursor::skipWhitespaceAndComments() {
  while (!eof()) {
    char c = peek();
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      get();
    } else if (c == '#') {
      while (!eof() && peek() != '\n') get();
    } else {
      break;
    }
  }
}

std::uint32_t TextCursor::readHex(std::size_t digits) {
  std::uint32_t value = 0;
  for (std::size_t i = 0; i < digits; ++i) {
    char c = peek();
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      fail("invalid unicode escape");
    }
    get();
    value = value * 16 +
            static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(c))
                                           ? c - '0'
                                           : std::tolower(c) - 'a' + 10);
  }
  return value;
}

std::string TextCursor::readIriRef() {
  auto start = pos_;
  get();  // '<'
  std::string out;
  while (true) {
    if (eof()) failAt(start, "unterminated IRI");
    char c = peek();
    if (c == '>') {
      get();
      return out;
    }
    if (c == '\\') {
      get();
      char kind = peek();
      if (kind != 'u' && kind != 'U') fail("invalid escape in IRI");
      get();
      appendUtf8(out, readHex(kind == 'u' ? 4 : 8));
      continue;
    }
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '<' ||
        c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`') {
      fail(std::string("invalid character in IRI: '") + c + "'");
    }
    out += get();
  }
}

std::string TextCursor::readQuotedString() {
  auto start = pos_;
  char quote = peek();
  bool isLong = peek(1) == quote && peek(2) == quote;
  advance(isLong ? 3 : 1);
  std::string out;
  while (true) {
    if (eof()) failAt(start, "unterminated string literal");
    char c = peek();
    if (c == quote) {
      if (!isLong) {
        get();
        return out;
      }
      if (peek(1) == quote && peek(2) == quote) {
        // A long string may end with up to two extra quotes before the
        // closing triple.
        while (peek(3) == quote) out += get();
        advance(3);
        return out;
      }
      out += get();
      continue;
    }
    if (!isLong && (c == '\n' || c == '\r')) {
      fail("newline in short string literal");
    }
    if (c == '\\') {
      get();
      char e = eof() ? '\0' : get();
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u': appendUtf8(out, readHex(4)); break;
        case 'U': appendUtf8(out, readHex(8)); break;
        default: fail("invalid escape sequence in string");
      }
      continue;
    }
    out += get();
  }
}

const char* TextCursor::readNumber(std::string& text) {
  auto isDigit = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  };
  text.clear();
  if (peek() == '+' || peek() == '-') text += get();
  bool digits = false;
  while (isDigit(peek())) {
    text += get();
    digits = true;
  }
  bool decimal = false;
  if (peek() == '.' && isDigit(peek(1))) {
    decimal = true;
    text += get();
    while (isDigit(peek())) text += get();
    digits = true;
  }
  if (!digits) fail("invalid number");
  if (peek() == 'e' || peek() == 'E') {
    text += get();
    if (peek() == '+' || peek() == '-') text += get();
    if (!isDigit(peek())) fail("invalid exponent");
    while (isDigit(peek())) text += get();
    return "double";
  }
  return decimal ? "decimal" : "integer";
}

}  // namespace ccai::detail
