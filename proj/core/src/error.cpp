#include "qstoch/error.hpp"

namespace qstoch {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonUnitConjugator: return "NonUnitConjugator";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroInFrame: return "ZeroInFrame";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotBistochastic: return "NotBistochastic";
    case ErrorKind::WrongSize: return "WrongSize";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::WrongScalarField: return "WrongScalarField";
    case ErrorKind::UnsupportedSize: return "UnsupportedSize";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::DegenerateP: return "DegenerateP";
    case ErrorKind::NoRealSolution: return "NoRealSolution";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace qstoch
