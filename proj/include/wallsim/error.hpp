#pragma once

#include <stdexcept>
#include <string>

namespace wallsim {

enum class ErrorKind {
  InvalidArgs,
  NoConvergence,
  Overflow,
  NearSingular,
  OutOfRange,
  InvalidInterval,
  Inconsistency,
  DegenerateRange,
  IntervalOutOfWalls,
  Config,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wallsim
