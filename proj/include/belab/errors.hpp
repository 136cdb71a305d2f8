#pragma once

#include <stdexcept>
#include <string>

namespace belab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Warp profile or density is not smooth at a pole.
class PoleRegularityError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver did not converge; `residual` is the last residual norm seen.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Input that carries no information (constant eigenfunction, empty level sets).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis required by an estimate does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace belab
