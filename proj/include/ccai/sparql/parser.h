#pragma once

#include <string_view>

#include "ccai/sparql/query.h"

namespace ccai::sparql {

// Parses a SELECT query in the supported subset. `#` comments are skipped and
// typographic quotes around string literals (``...'' as well as the Unicode
// curly double quotes) are read as ordinary double quotes.
//
// Throws ParseError with line/column for malformed text, UnsupportedFeature
// naming the construct for FILTER, ORDER BY, property paths and friends, and
// UnknownPrefix for unbound prefixed names.
Query parseQuery(std::string_view text);

// Same, with `prefixes` pre-bound (the query's own PREFIX lines win).
Query parseQuery(std::string_view text, const PrefixMap& prefixes);

}  // namespace ccai::sparql
