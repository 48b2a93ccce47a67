#include "partseg/error.hpp"

namespace partseg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::MultiComponent: return "MultiComponent";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoValidCut: return "NoValidCut";
    case ErrorCode::SplitFailed: return "SplitFailed";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::VisibilityViolation: return "VisibilityViolation";
    case ErrorCode::NoGroundTruth: return "NoGroundTruth";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace partseg
