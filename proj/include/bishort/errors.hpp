#pragma once

#include <stdexcept>
#include <string>

namespace bishort {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidTolerance : public Error {
 public:
  using Error::Error;
};

class InvalidOperator : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  NotPSD(double min_eigenvalue, double threshold)
      : Error("matrix is not positive semidefinite: eigenvalue " + std::to_string(min_eigenvalue) +
              " below -" + std::to_string(threshold)),
        min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

class NotComplementary : public Error {
 public:
  using Error::Error;
};

/// Raised when R(B) is not contained in R(A) for the equation AX = B.
/// `borderline` marks residuals in (eq_rel, 10 eq_rel], i.e. draws too close
/// to the rank threshold to be trusted either way.
class RangeNotIncluded : public Error {
 public:
  RangeNotIncluded(double residual, bool borderline)
      : Error("range inclusion fails: residual " + std::to_string(residual) +
              (borderline ? " (borderline)" : "")),
        residual(residual),
        borderline(borderline) {}
  double residual;
  bool borderline;
};

class NotInSubspace : public Error {
 public:
  using Error::Error;
};

class BadDims : public Error {
 public:
  using Error::Error;
};

class ZeroOperator : public Error {
 public:
  using Error::Error;
};

class BadAuxiliary : public Error {
 public:
  using Error::Error;
};

class EscalationExhausted : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree by construction did not.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bishort
