#pragma once

#include <stdexcept>

namespace sumsetlab {

// A checked mathematical identity or bound failed. The CLI maps this to
// exit code 1, distinct from usage errors (exit 2).
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text: group specs, element literals, set files.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sumsetlab
