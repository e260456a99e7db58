#pragma once

#include <stdexcept>
#include <string>

namespace diskcurv {

enum class ErrorCode {
  ShapeMismatch,
  DegenerateCurvature,
  NonPositiveLambda,
  ResolutionNotDivisible,
  NegativeEps,
  InvalidGrid,
  InvalidOptions,
  PoleInsideClosure,
  MuNotAboveOne,
  DeficitNotAboveOne,
  OutOfRange,
  ImageLeavesDisk,
  PathCollapse,
  SymmetryViolation,
  ScanResolution,
  EigSolverFailure,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace diskcurv
