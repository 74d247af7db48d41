#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcr {

enum class ErrorKind {
  NotHermitian,
  NotPositive,
  TraceNotOne,
  DimensionMismatch,
  BadSubsystemIndex,
  EigenDecompositionFailure,
  NotUnitary,
  NotOrthonormal,
  NotPrime,
  TooFewMeasurements,
  TooManyMeasurements,
  InstanceTooLarge,
  NonFinite,
  BadInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type. The message
/// always starts with the name of the violated invariant.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcr
