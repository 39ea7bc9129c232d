#pragma once

// Error taxonomy. Parse failures, violated mathematical preconditions, and
// backend limitations are distinct because the CLI maps them to different
// exit codes.

#include <stdexcept>
#include <string>

namespace nilsoliton {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input files / bad field values.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Input is well-formed but violates a mathematical precondition
// (not 2-step, degenerate metric, unsupported constructor parameters, ...).
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// The requested computation cannot be done on the active scalar backend
// (e.g. a float pivot too close to zero to decide degeneracy).
struct BackendError : Error {
  explicit BackendError(const std::string& msg) : Error(msg) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

}  // namespace nilsoliton
