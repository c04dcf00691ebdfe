// Parsed form of the supported SPARQL fragment: SELECT [DISTINCT] over a
// group graph pattern built from triple patterns, OPTIONAL, UNION, VALUES and
// nested groups.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccai/rdf/prefix_map.h"
#include "ccai/rdf/term.h"

namespace ccai::sparql {

struct Variable {
  std::string name;  // without the leading '?'
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, Term>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;  // Variable or an IRI term
  PatternTerm object;
};

// Heap-allocated value with deep-copy semantics, used to break the recursion
// between group patterns and the elements that contain them.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T& operator*() { return *ptr_; }
  T* operator->() { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

struct GroupPattern;

struct OptionalPattern {
  Box<GroupPattern> group;
};

// Two or more alternatives; `{A} UNION {B} UNION {C}` keeps all arms.
struct UnionPattern {
  std::vector<GroupPattern> arms;
};

// Inline data. A missing cell (UNDEF) leaves the variable unbound.
struct ValuesPattern {
  std::vector<Variable> variables;
  std::vector<std::vector<std::optional<Term>>> rows;
};

struct NestedGroup {
  Box<GroupPattern> group;
};

using PatternElement = std::variant<TriplePattern, OptionalPattern,
                                    UnionPattern, ValuesPattern, NestedGroup>;

struct GroupPattern {
  std::vector<PatternElement> elements;
};

struct Query {
  std::vector<std::string> variables;  // projection order
  bool distinct = false;
  PrefixMap prefixes;
  GroupPattern pattern;
  // Non-fatal findings such as projected variables absent from the pattern.
  std::vector<std::string> warnings;
};

// All variable names mentioned anywhere in `group`, in first-seen order.
std::vector<std::string> patternVariables(const GroupPattern& group);

}  // namespace ccai::sparql
