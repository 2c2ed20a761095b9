#include "rcg/error.hpp"

namespace rcg {

const char* to_string(DomainErrorKind kind) {
  switch (kind) {
    case DomainErrorKind::DivisionByZero: return "DivisionByZero";
    case DomainErrorKind::NotPositive: return "NotPositive";
    case DomainErrorKind::UnsupportedExponent: return "UnsupportedExponent";
    case DomainErrorKind::SingularMatrix: return "SingularMatrix";
    case DomainErrorKind::DimensionMismatch: return "DimensionMismatch";
    case DomainErrorKind::UnsolvableSpectrum: return "UnsolvableSpectrum";
    case DomainErrorKind::RepeatedEigenvalue: return "RepeatedEigenvalue";
    case DomainErrorKind::DegenerateLeadingSpectrum: return "DegenerateLeadingSpectrum";
    case DomainErrorKind::UnsupportedType: return "UnsupportedType";
    case DomainErrorKind::NotInGroup: return "NotInGroup";
    case DomainErrorKind::NotNilpotent: return "NotNilpotent";
    case DomainErrorKind::NotUnipotent: return "NotUnipotent";
    case DomainErrorKind::ZeroInput: return "ZeroInput";
    case DomainErrorKind::ZeroParameter: return "ZeroParameter";
    case DomainErrorKind::NotInUTheta: return "NotInUTheta";
    case DomainErrorKind::NotClosed: return "NotClosed";
    case DomainErrorKind::NotInImage: return "NotInImage";
    case DomainErrorKind::NotInChamber: return "NotInChamber";
    case DomainErrorKind::NoRelatingElement: return "NoRelatingElement";
  }
  return "DomainError";
}

}  // namespace rcg
