#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ptlab {

enum class ErrorKind {
  invalid_dimension,
  invalid_model,
  invalid_parameter,
  invalid_input,
  singular_parameter,
  numerical_failure,
  not_an_eigenvalue,
  resolvent_pole,
  deficiency,
  unsupported_model,
  not_recurrently_solvable,
  bracket_invalid,
  configuration_error,
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Energy hit an eigenvalue of the inner (bulk) block.
class ResolventPole : public Error {
public:
  ResolventPole(double delta, const std::string& what)
      : Error(ErrorKind::resolvent_pole, what), delta_(delta) {}
  double delta() const noexcept { return delta_; }

private:
  double delta_;
};

/// An eigenvalue whose eigenspace is smaller than its algebraic multiplicity.
class Deficiency : public Error {
public:
  Deficiency(std::complex<double> eigenvalue, const std::string& what)
      : Error(ErrorKind::deficiency, what), eigenvalue_(eigenvalue) {}
  std::complex<double> eigenvalue() const noexcept { return eigenvalue_; }

private:
  std::complex<double> eigenvalue_;
};

/// Recurrent elimination stalled; carries the unresolved (i, j) entries.
class NotRecurrentlySolvable : public Error {
public:
  NotRecurrentlySolvable(std::vector<std::pair<std::size_t, std::size_t>> unresolved,
                         const std::string& what)
      : Error(ErrorKind::not_recurrently_solvable, what), unresolved_(std::move(unresolved)) {}
  const std::vector<std::pair<std::size_t, std::size_t>>& unresolved() const noexcept {
    return unresolved_;
  }

private:
  std::vector<std::pair<std::size_t, std::size_t>> unresolved_;
};

/// Iterative method exceeded its budget.
class NumericalFailure : public Error {
public:
  NumericalFailure(const std::string& what, std::size_t iterations)
      : Error(ErrorKind::numerical_failure, what), iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

private:
  std::size_t iterations_;
};

}  // namespace ptlab
