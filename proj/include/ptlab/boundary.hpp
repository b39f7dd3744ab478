#pragma once

#include <vector>

#include "ptlab/lattice.hpp"

namespace ptlab {

/// Closed-form eigenbasis of the (m+1)-dimensional discrete Laplacian.
struct LaplacianEigenbasis {
  std::size_t dim = 0;
  std::vector<double> nodes;   ///< y_j = cos((j+1)π/(m+2)), decreasing
  std::vector<double> deltas;  ///< δ_j = 2(1 − y_j), increasing
  CMatrix basis;               ///< column j ∝ (U_0(y_j), …, U_m(y_j)), orthonormal
};

/// Chebyshev polynomial of the second kind by the three-term recurrence.
Complex chebyshev_u(std::size_t k, Complex y);

/// The m+1 zeros of U_{m+1}.
std::vector<double> chebyshev_nodes(std::size_t m);
LaplacianEigenbasis laplacian_eigenbasis(std::size_t m);

/// Σ(E) = (E − T_inner)⁻¹ on the n−1 bulk sites, through the Chebyshev eigenbasis.
/// Throws ResolventPole when E is within 1e−10 of a bulk eigenvalue.
CMatrix inner_resolvent(Complex energy, const EndpointModel& model);

/// 2×2 system for the endpoint amplitudes (x₋, x₊) after the bulk is eliminated:
/// S(E) = H_bb − E + H_bi Σ(E) H_ib. Bound-state energies are the zeros of det S.
CMatrix secular_matrix(Complex energy, const EndpointModel& model);
Complex secular_determinant(Complex energy, const EndpointModel& model);
/// d/dE det S(E), using dΣ/dE = −Σ².
Complex secular_determinant_derivative(Complex energy, const EndpointModel& model);

struct BoundState {
  Complex energy;
  Complex x_minus;
  Complex x_plus;
  CVector inner;  ///< the n−1 bulk amplitudes
  CVector full;   ///< (x₋, inner, x₊), unit length
  double residual = 0.0;  ///< ‖Hψ − Eψ‖ / (‖H‖ ‖ψ‖)
};

struct EnergyGrid {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;
};

struct BoundStateScan {
  std::vector<BoundState> states;     ///< ascending energy
  std::vector<double> skipped_poles;  ///< bulk eigenvalues that grid points or roots fell on
};

/// Real-axis bound states: grid scan of the pole-cleared secular determinant
/// det S(E)·Π_k(E − δ_k), sign-change and local-minimum bracketing, bisection, then
/// wavefunction assembly from the null vector of S(E). Energies closer than `tol` merge.
BoundStateScan bound_states(const EndpointModel& model, const EnergyGrid& grid, double tol);

/// Real interval containing the whole real spectrum (Gershgorin discs, padded).
EnergyGrid default_energy_window(const EndpointModel& model, std::size_t steps);

/// Unit upper triangular U(τ) with entries τ^{j−i} for j ≥ i.
CMatrix triangular_u(Complex tau, std::size_t dim);

/// t with t + 1/t = 2y and 2y = 2 − E, choosing |t| ≥ 1.
Complex t_from_energy(Complex energy);

}  // namespace ptlab
