// Exception hierarchy shared by every engine module.
//
// Each failure named in a module contract is its own type so callers (the
// CLI and the HTTP service) can map it to an exit code or a machine code
// without string matching.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccai {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` and `column` are 1-based and point inside the
// input; `snippet` holds the offending text.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message,
             std::string snippet = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& snippet() const { return snippet_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string snippet_;
};

// Syntactically recognised construct outside the supported query subset.
class UnsupportedFeature : public ParseError {
 public:
  UnsupportedFeature(std::size_t line, std::size_t column,
                     std::string construct);
  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

class UnknownPrefix : public Error {
 public:
  explicit UnknownPrefix(const std::string& label)
      : Error("unknown prefix '" + label + "'"), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class InvalidTerm : public Error {
 public:
  using Error::Error;
};

class UnknownClass : public Error {
 public:
  using Error::Error;
};

class UnknownProperty : public Error {
 public:
  using Error::Error;
};

class LiteralWhereIriExpected : public Error {
 public:
  using Error::Error;
};

class DatatypeMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownCq : public Error {
 public:
  using Error::Error;
};

class TaskNotFound : public Error {
 public:
  using Error::Error;
};

class AmbiguousTaskName : public Error {
 public:
  using Error::Error;
};

class EmptyInstruction : public Error {
 public:
  using Error::Error;
};

class EmptyAttribution : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccai
