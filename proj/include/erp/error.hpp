#ifndef ERP_ERROR_HPP
#define ERP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace erp {

enum class ErrorCode {
  OutOfRangeEndpoint,
  NegativeCount,
  LabelCountMismatch,
  TooLarge,
  CirclesUndefined,
  DegreeExceedsTable,
  ShapeMismatch,
  NotSymmetric,
  NotTwinFree,
  NotRealModel,
  NotRealValues,
  NotOrthogonal,
  DimensionTooSmall,
  FactorizationMismatch,
  TermsTooClose,
  InvalidModel,
  InvalidInput,
  NumericalFailure,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::OutOfRangeEndpoint:    return "OUT_OF_RANGE_ENDPOINT";
    case ErrorCode::NegativeCount:         return "NEGATIVE_COUNT";
    case ErrorCode::LabelCountMismatch:    return "LABEL_COUNT_MISMATCH";
    case ErrorCode::TooLarge:              return "TOO_LARGE";
    case ErrorCode::CirclesUndefined:      return "CIRCLES_UNDEFINED";
    case ErrorCode::DegreeExceedsTable:    return "DEGREE_EXCEEDS_TABLE";
    case ErrorCode::ShapeMismatch:         return "SHAPE_MISMATCH";
    case ErrorCode::NotSymmetric:          return "NOT_SYMMETRIC";
    case ErrorCode::NotTwinFree:           return "NOT_TWIN_FREE";
    case ErrorCode::NotRealModel:          return "NOT_REAL_MODEL";
    case ErrorCode::NotRealValues:         return "NOT_REAL_VALUES";
    case ErrorCode::NotOrthogonal:         return "NOT_ORTHOGONAL";
    case ErrorCode::DimensionTooSmall:     return "DIMENSION_TOO_SMALL";
    case ErrorCode::FactorizationMismatch: return "FACTORIZATION_MISMATCH";
    case ErrorCode::TermsTooClose:         return "TERMS_TOO_CLOSE";
    case ErrorCode::InvalidModel:          return "INVALID_MODEL";
    case ErrorCode::InvalidInput:          return "INVALID_INPUT";
    case ErrorCode::NumericalFailure:      return "NUMERICAL_FAILURE";
  }
  return "UNKNOWN";
}

// Validation and input problems; the CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  ErrorCode code;
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(c)) + ": " + msg), code(c) {}
};

// Numerical breakdown inside an algorithm; the CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(ErrorCode::NumericalFailure, msg) {}
};

}  // namespace erp

#endif
