// Turtle documents and canonical queries compiled into the library from
// data/.

#pragma once

namespace ccai::detail {

extern const char kTboxTurtle[];
extern const char kFigure8Turtle[];
extern const char kCasestudyTurtle[];

// Canonical queries 1..7 at indexes 0..6.
extern const char* const kCanonicalQueries[7];

}  // namespace ccai::detail
