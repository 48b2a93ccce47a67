#pragma once

#include <stdexcept>
#include <string>

namespace partseg {

enum class ErrorCode {
  EmptyMask,
  MultiComponent,
  EmptyInput,
  DegenerateSegment,
  OutOfBounds,
  LengthMismatch,
  DimensionMismatch,
  NoValidCut,
  SplitFailed,
  DepthExceeded,
  VisibilityViolation,
  NoGroundTruth,
  SchemaError,
  IoError,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a machine-checkable code. The CLI maps domain
/// errors to exit code 1 and I/O or usage problems to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace partseg
