#pragma once

#include <stdexcept>
#include <string>

namespace tanlab {

enum class ErrorCode {
  kInvalidArgument,
  kOmittedValue,
  kClearanceViolation,
  kLiftDivergence,
  kInvalidRadius,
  kDegenerateMoebius,
  kRationalInput,
  kResonantMultiplier,
  kInsufficientData,
  kSeriesDivergence,
  kOrbitEscaped,
  kIoFailure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a linearizer meets a (near-)resonant small denominator.
class ResonanceError : public Error {
 public:
  ResonanceError(int degree, double denominator, const std::string& message)
      : Error(ErrorCode::kResonantMultiplier, message),
        degree_(degree),
        denominator_(denominator) {}

  int degree() const { return degree_; }
  double denominator() const { return denominator_; }

 private:
  int degree_;
  double denominator_;
};

// Raised when a curve to be lifted comes too close to an omitted value.
class ClearanceError : public Error {
 public:
  ClearanceError(double nearest, const std::string& message)
      : Error(ErrorCode::kClearanceViolation, message), nearest_(nearest) {}

  double nearest_approach() const { return nearest_; }

 private:
  double nearest_;
};

}  // namespace tanlab
