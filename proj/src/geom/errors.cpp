#include "finban/errors.hpp"

namespace finban {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotFullDimensional: return "NotFullDimensional";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::DimensionOverBudget: return "DimensionOverBudget";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::DependentBasis: return "DependentBasis";
    case ErrorKind::DependentColumns: return "DependentColumns";
    case ErrorKind::NotSpanning: return "NotSpanning";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::NotAZonotope: return "NotAZonotope";
    case ErrorKind::NotIsometricInput: return "NotIsometricInput";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::MalformedRational: return "MalformedRational";
  }
  return "Unknown";
}

}  // namespace finban
