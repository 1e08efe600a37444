#pragma once

#include <stdexcept>
#include <string>

namespace schurmix {

// Base for anything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A series or iteration hit its term cap before meeting tolerance.
// Carries the partial value and a bound on what is still missing.
struct ConvergenceError : Error {
  double partial;
  double bound;
  ConvergenceError(const std::string& what, double partial_, double bound_)
      : Error(what), partial(partial_), bound(bound_) {}
};

// Cholesky pivot failure; `pivot` is the zero-based index that was not positive.
struct DefinitenessError : Error {
  int pivot;
  DefinitenessError(const std::string& what, int pivot_) : Error(what), pivot(pivot_) {}
};

// Mean matrix fails the rank-one requirement of the noncentral case.
struct RankError : Error {
  using Error::Error;
};

// Operation not defined for the model's case (e.g. mixture weights of a central model).
struct CaseError : Error {
  using Error::Error;
};

// Malformed model input (JSON shape, missing keys, inconsistent dimensions).
struct InputError : Error {
  using Error::Error;
};

}  // namespace schurmix
