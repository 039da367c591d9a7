#pragma once

#include <stdexcept>
#include <string>

namespace potred {

// Nonpositive x or z component, or similar loss of domain interiority.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace potred
