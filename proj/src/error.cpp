#include "wallsim/error.hpp"

namespace wallsim {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgs: return "invalid-args";
    case ErrorKind::NoConvergence: return "no-convergence";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::NearSingular: return "near-singular";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::InvalidInterval: return "invalid-interval";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::DegenerateRange: return "degenerate-range";
    case ErrorKind::IntervalOutOfWalls: return "interval-out-of-walls";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace wallsim
