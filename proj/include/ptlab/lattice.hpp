#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptlab/matrix.hpp"
#include "ptlab/rational.hpp"

namespace ptlab {

/// Parameters of one PT-symmetric chain with nonlocal endpoint couplings.
///
/// The (n+1)×(n+1) Hamiltonian is the discrete Laplacian (2 on the diagonal, −1 beside it)
/// plus couplings living only on the first/last rows and columns:
///   row 0      = (2 − z, β*_{n−1} − 1, β*_{n−2}, …, β*_1, b)
///   column 0   = (2 − z, α_1 − 1, α_2, …, α_{n−1}, a)ᵀ
///   row n      = (a, α*_{n−1}, …, α*_2, α*_1 − 1, 2 − z*)
///   column n   = (b, β_1, β_2, …, β_{n−1} − 1, 2 − z*)ᵀ
/// Vectors are stored 1-based in the formula, so alpha[0] is α_1.
struct EndpointModel {
  std::size_t n = 2;
  Complex z = 0.0;
  double a = 0.0;
  double b = 0.0;
  CVector alpha = CVector(1, 0.0);
  CVector beta = CVector(1, 0.0);

  std::size_t dim() const { return n + 1; }
  /// Throws invalid_model when n < 2, vector lengths differ from n − 1 or a value is non-finite.
  void validate() const;
  /// z real and every α, β real.
  bool is_real() const;
  bool operator==(const EndpointModel&) const = default;
};

/// Local endpoint model with a = b = 0 and α = β = 0.
EndpointModel local_model(std::size_t n, Complex z);

/// Two bit strings (σ_0..σ_N, τ_0..τ_N); τ_0 is carried but never enters a matrix.
struct BinaryIndex {
  std::vector<std::uint8_t> sigma;
  std::vector<std::uint8_t> tau;

  std::size_t dim() const { return sigma.size(); }
  /// Parses the most-significant-first order "σ_N…σ_0", optionally followed by "+i" and "τ_N…τ_0",
  /// e.g. "00001" or "11000+i00000".
  static BinaryIndex parse(const std::string& text);
  void validate() const;
};

BinaryIndex rho_a();  ///< (0,0,0,0,1) + i·0
BinaryIndex rho_b();  ///< (1,1,1,1,1) + i·0
BinaryIndex rho_c();  ///< (1,1,0,0,0) + i·0

CMatrix build_kinetic(std::size_t dim);
CMatrix build_parity(std::size_t dim);
CMatrix build_endpoint_hamiltonian(const EndpointModel& model);

/// Partitioned interaction: b_col and d_col fill columns 0 and N (length N+1);
/// a_row and c_row fill the inner parts of rows 0 and N as conjugates (length N−1).
CMatrix build_interaction(std::span<const Complex> b_col, std::span<const Complex> d_col,
                          std::span<const Complex> a_row, std::span<const Complex> c_row);

/// First row (σ_N − iτ_N, …, σ_1 − iτ_1, σ_0) and last column σ_j + iτ_j on rows 1..N.
CMatrix build_rho_potential(const BinaryIndex& rho);

/// T + R·V(ρ) as an endpoint model: z = −R(σ_N − iτ_N), β_j = R(σ_j + iτ_j), b = Rσ_0.
EndpointModel rho_model(const BinaryIndex& rho, double coupling);

/// T + R·V(ρ) in exact arithmetic; needs τ = 0.
QMatrix rho_hamiltonian_exact(const BinaryIndex& rho, const Rational& coupling);

/// z = 1 / (1 − ξ − iζ); singular at ξ = 1, ζ = 0.
Complex robin_to_z(double xi, double zeta);

/// ‖H†P − PH‖_F.
double check_pt_symmetry(const CMatrix& h);

}  // namespace ptlab
