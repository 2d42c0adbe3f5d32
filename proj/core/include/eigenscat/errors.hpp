#pragma once

#include <stdexcept>
#include <string>

namespace eigenscat {

/// Argument outside the supported mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or non-finite input data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A series or discretization could not reach its accuracy target.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root bracketing failed, e.g. an interval endpoint sits on a root.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A factorization or eigensolve broke down.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver stopped before reaching its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace eigenscat
