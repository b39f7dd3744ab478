#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptlab/lattice.hpp"

namespace ptlab {

/// Affine function c·x + constant of the free-parameter vector x.
struct LinearForm {
  std::vector<double> coefficients;
  double constant = 0.0;

  static LinearForm zero(std::size_t arity) { return {std::vector<double>(arity, 0.0), 0.0}; }
  static LinearForm unit(std::size_t arity, std::size_t slot);

  double evaluate(std::span<const double> x) const;
  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator*=(double s);
  /// Largest absolute coefficient or constant.
  double magnitude() const;
};

/// Symmetric matrix of linear forms; each instantiation is a candidate metric.
struct MetricFamily {
  std::size_t dim = 0;
  std::vector<LinearForm> entries;  ///< row-major dim × dim
  std::vector<std::string> parameter_names;
  std::string model_tag;

  std::size_t arity() const { return parameter_names.size(); }
  const LinearForm& entry(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  CMatrix instantiate(std::span<const double> x) const;
};

enum class Definiteness { positive_definite, indefinite, singular };
const char* to_string(Definiteness d);

struct PositivityReport {
  double min_eigenvalue = 0.0;
  std::vector<double> eigenvalues;  ///< ascending
  Definiteness classification = Definiteness::singular;
};

struct MetricCertificate {
  CMatrix theta;
  double dieudonne_residual = 0.0;
  double min_eigenvalue = 0.0;
  Definiteness classification = Definiteness::singular;
};

struct ConjugateEigenvector {
  Complex energy;
  CVector ket;  ///< H†·ket = energy·ket, unit length
};

/// Eigenvectors of H†. Throws Deficiency when H† is not diagonalizable.
std::vector<ConjugateEigenvector> conjugate_eigenvectors(const CMatrix& h);

/// Θ = Σ_n κ_n² |n⟩⟩⟨⟨n| over the eigenvectors of H†. Empty kappa means κ_n = 1.
MetricCertificate metric_spectral(const CMatrix& h, std::span<const double> kappa = {});

/// Same sum for explicitly supplied kets (unit-normalized internally).
MetricCertificate metric_from_kets(const CMatrix& h, const std::vector<ConjugateEigenvector>& kets,
                                   std::span<const double> kappa = {});

/// H†-eigenvector (χ, x) at energy E for a model with β = 0 and b = 0:
/// χ = U(t)U(1/t)·P·u(y)·x with 2y = 2 − E = t + 1/t and u(y) = (2y − z, α_1 − 1, α_2, …, α_{n−1}).
/// Throws unsupported_model otherwise.
CVector chi_vector(const EndpointModel& model, Complex energy, Complex x = 1.0);

/// Unit-normalized chi kets for every eigenvalue of the model's Hamiltonian.
std::vector<ConjugateEigenvector> chi_kets(const EndpointModel& model);

/// ‖H†Θ − ΘH‖_F.
double dieudonne_residual(const CMatrix& h, const CMatrix& theta);

/// A free parameter placed at Θ_{row,col}.
struct Seed {
  std::size_t row;
  std::size_t col;
  std::string name;
};

/// x1 … x_{n+1} on the first row.
std::vector<Seed> first_row_seeds(std::size_t dim);

/// Solves H^TΘ = ΘH for real symmetric Θ by fixpoint elimination: seeded entries are free
/// parameters and any equation with a single unresolved entry (pivot above 1e−12) fixes it.
/// Throws singular_parameter when a pivot vanishes and leaves a constraint on the parameters,
/// NotRecurrentlySolvable when elimination stalls otherwise, invalid_input for complex H.
MetricFamily recurrent_metric_family(const CMatrix& h, const std::vector<Seed>& seeds = {});

/// Frobenius-orthonormal basis of all real symmetric (real H) or Hermitian (complex H)
/// solutions of H†Θ = ΘH, from the numerical null space of the vectorized equation.
std::vector<CMatrix> sylvester_nullspace(const CMatrix& h, double threshold = 1e-9);

/// Θ = diag(m0, d, …, d, mN) normalized to d = 1.
struct DiagonalMetric {
  double m0 = 0.0;
  double d = 1.0;
  double mN = 0.0;
  CMatrix matrix(std::size_t dim) const;
};
std::optional<DiagonalMetric> diagonal_metric(const EndpointModel& model);

/// Minimum eigenvalue and classification: > tol positive definite, < −tol indefinite,
/// otherwise singular. Throws invalid_input unless Θ is Hermitian within 1e−12.
PositivityReport positivity(const CMatrix& theta, double tol = 1e-10);

/// Full certificate for a candidate metric.
MetricCertificate certify(const CMatrix& h, const CMatrix& theta, double tol = 1e-10);

/// ‖Λ†Θ − ΘΛ‖_F.
double observable_check(const CMatrix& lambda_op, const CMatrix& theta);

}  // namespace ptlab
