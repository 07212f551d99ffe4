#pragma once

#include <stdexcept>
#include <string>

namespace spingeom {

// All library failures derive from Error so callers (the CLI in particular)
// can separate numerical failures from programming errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BranchCutError : public Error {
 public:
  using Error::Error;
};

class OffShellError : public Error {
 public:
  OffShellError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  /// p·p − m² at the rejected momentum.
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ToleranceExceeded : public Error {
 public:
  using Error::Error;
};

class ImaginaryMassError : public Error {
 public:
  ImaginaryMassError(const std::string& what, double h_squared)
      : Error(what), h_squared_(h_squared) {}
  double h_squared() const noexcept { return h_squared_; }

 private:
  double h_squared_;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class SingularTetradError : public Error {
 public:
  using Error::Error;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

class GridTooCoarseError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnknownRepresentation : public Error {
 public:
  using Error::Error;
};

}  // namespace spingeom
