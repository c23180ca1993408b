#pragma once

#include <stdexcept>
#include <string>

namespace arrfaces {

enum class ErrorCode {
  NotSorted,
  NotConvex,
  XOverlap,
  NotFound,
  EmptyChain,
  EmptyHull,
  GeneralPosition,
  DegenerateInput,
  PointOnLine,
  PointOnDualLine,
  PointOnCellEdge,
  PointOnBoundary,
  SegmentsIntersect,
  HullsIntersect,
  ParseError,
  ParamRange,
  Internal,
};

const char* error_code_name(ErrorCode c);

// All library failures are reported through this exception; `code` carries the
// structured cause so callers (and the CLI) can react without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace arrfaces
