#pragma once

#include <cstddef>
#include <vector>

#include "ptlab/matrix.hpp"

namespace ptlab {

/// Eigenvalues of a square matrix with realness classification.
struct SpectrumReport {
  CVector eigenvalues;      ///< sorted by real part, then imaginary part
  std::vector<bool> real;   ///< per-eigenvalue realness flag
  bool all_real = true;
  std::size_t complex_pair_count = 0;
};

struct DefectReport {
  Complex eigenvalue;
  std::size_t algebraic_multiplicity = 0;
  std::size_t geometric_multiplicity = 0;
  bool defective() const { return geometric_multiplicity < algebraic_multiplicity; }
};

struct EigenPair {
  Complex value;
  CVector vector;  ///< unit Euclidean length
};

struct EigenDecomposition {
  std::vector<EigenPair> pairs;
  /// Eigenvalue clusters whose eigenspace is smaller than their multiplicity.
  std::vector<DefectReport> deficient;
  bool complete() const { return deficient.empty(); }
};

struct EigenOptions {
  double deflation = 1e-14;              ///< relative subdiagonal threshold
  std::size_t iterations_per_dim = 100;  ///< total QR sweep budget is this × dim
  double cluster_tolerance = 1e-7;       ///< absolute separation for multiplicity clustering
};

/// Default realness test |Im λ| ≤ 1e−8 (1 + |λ|) used across sweeps.
double default_realness_tolerance(Complex lambda);

/// Eigenvalues by balancing, Householder–Hessenberg reduction and shifted QR.
/// A pair is flagged real when |Im λ| ≤ tol·(1 + |λ|). For real input a near-real complex
/// pair is re-checked exactly with Sturm sequences on the rational characteristic polynomial.
SpectrumReport eigenvalues(const CMatrix& m, double tol = 1e-8, const EigenOptions& options = {});

/// Unsorted raw QR eigenvalues, no classification.
CVector qr_eigenvalues(const CMatrix& m, const EigenOptions& options = {});

/// Eigenvectors from numerical null spaces of M − λI. Defective clusters keep the
/// independent vectors they have and are listed in `deficient`.
EigenDecomposition eigenpairs(const CMatrix& m, const EigenOptions& options = {});

/// Monic det(λI − M), index = power. Exact (rational Faddeev–LeVerrier) for real input,
/// Hessenberg recurrence otherwise.
CVector characteristic_polynomial(const CMatrix& m);

/// Algebraic multiplicity counts characteristic-polynomial roots within `tol` of λ;
/// geometric multiplicity is the null-space dimension of M − λI at threshold tol·max(1, ‖M‖).
DefectReport defectiveness_at(const CMatrix& m, Complex lambda, double tol);

/// Singular value decomposition by one-sided Jacobi rotations.
struct SvdResult {
  std::vector<double> singular_values;  ///< descending
  CMatrix v;                            ///< right singular vectors as columns, same order
};
SvdResult svd(const CMatrix& a);

/// Orthonormal basis (columns) of the numerical null space: singular values ≤ threshold.
CMatrix null_space(const CMatrix& a, double threshold);

/// Eigenvalues (ascending) and optionally eigenvectors of a Hermitian matrix by cyclic Jacobi.
struct HermitianEigen {
  std::vector<double> values;
  CMatrix vectors;  ///< columns
};
HermitianEigen hermitian_eigen(const CMatrix& m);

/// det(M) via partial-pivoting LU.
Complex determinant(CMatrix m);
/// Solve M x = b via partial-pivoting LU.
CVector solve(CMatrix m, CVector b);
CMatrix inverse(const CMatrix& m);

}  // namespace ptlab
