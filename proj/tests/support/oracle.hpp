#pragma once
// Independent reference computations for the tests. Eigen is used only here, never by the library.

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ptlab/lattice.hpp"

namespace oracle {

using ptlab::CMatrix;
using ptlab::Complex;
using ptlab::CVector;

inline Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline CMatrix from_eigen(const Eigen::MatrixXcd& e) {
  CMatrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

inline void sort_complex(CVector& v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

inline CVector eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), false);
  CVector v(solver.eigenvalues().begin(), solver.eigenvalues().end());
  sort_complex(v);
  return v;
}

/// Real eigenvalues (|Im| ≤ tol) in ascending order.
inline std::vector<double> real_eigenvalues(const CMatrix& m, double tol = 1e-7) {
  std::vector<double> out;
  for (Complex e : eigenvalues(m))
    if (std::abs(e.imag()) <= tol * (1.0 + std::abs(e))) out.push_back(e.real());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}

/// Random endpoint model with every coupling magnitude at most `scale`.
inline ptlab::EndpointModel random_model(std::mt19937_64& rng, std::size_t n, double scale, bool complex_values = true,
                                         bool zero_beta = false) {
  std::uniform_real_distribution<double> u(-scale, scale);
  auto c = [&] { return complex_values ? Complex(u(rng), u(rng)) / std::sqrt(2.0) : Complex(u(rng), 0.0); };
  ptlab::EndpointModel m = ptlab::local_model(n, c());
  m.a = u(rng);
  m.b = zero_beta ? 0.0 : u(rng);
  for (auto& v : m.alpha) v = c();
  if (!zero_beta)
    for (auto& v : m.beta) v = c();
  return m;
}

}  // namespace oracle
