#pragma once

#include <stdexcept>
#include <string>

namespace skylink {

enum class ErrorCode {
  InvalidArgument,
  UnachievableSnr,
  Infeasible,
  DegenerateSequence,
  InvalidQuantLevels,
  NoOverlap,
  Io,
};

const char* to_string(ErrorCode code);

// Hard failures. Soft outcomes (solver non-convergence, an exhausted path
// budget, points that could not be snapped) are reported as status fields on
// the returned value instead.
class PlanningError : public std::runtime_error {
 public:
  PlanningError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skylink
