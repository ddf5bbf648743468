#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finban {

enum class ErrorKind {
  NotSymmetric,
  NotFullDimensional,
  Unbounded,
  Infeasible,
  DimensionOverBudget,
  BudgetExceeded,
  NotSurjective,
  DependentBasis,
  DependentColumns,
  NotSpanning,
  DimensionTooSmall,
  DimMismatch,
  NotProper,
  NotAZonotope,
  NotIsometricInput,
  ConstructionFailed,
  InvalidArgument,
  IoError,
  SchemaMismatch,
  MalformedRational,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; `kind()` is stable
// and is what tests and the CLI dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace finban
