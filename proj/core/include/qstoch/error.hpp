#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qstoch {

enum class ErrorKind {
  NonUnitConjugator,
  NotPure,
  DimensionMismatch,
  ZeroInFrame,
  NotUnitary,
  NotBistochastic,
  WrongSize,
  TooLarge,
  NotInGroup,
  WrongScalarField,
  UnsupportedSize,
  BadParams,
  DegenerateP,
  NoRealSolution,
  NotSymplectic,
  NotNormalized,
  InternalInconsistency,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is stable and is what the
/// CLI maps to exit codes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qstoch
