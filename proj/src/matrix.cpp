#include "ptlab/matrix.hpp"

#include <cmath>
#include <string>

namespace ptlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::invalid_model: return "invalid-model";
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::singular_parameter: return "singular-parameter";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::not_an_eigenvalue: return "not-an-eigenvalue";
    case ErrorKind::resolvent_pole: return "resolvent-pole";
    case ErrorKind::deficiency: return "deficiency";
    case ErrorKind::unsupported_model: return "unsupported-model";
    case ErrorKind::not_recurrently_solvable: return "not-recurrently-solvable";
    case ErrorKind::bracket_invalid: return "bracket-invalid";
    case ErrorKind::configuration_error: return "configuration-error";
  }
  return "unknown";
}

CMatrix operator*(double s, CMatrix a) {
  for (auto& v : a.data()) v *= s;
  return a;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

CVector operator*(const CMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::invalid_dimension, "matrix-vector shape mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

bool is_real(const CMatrix& a) {
  for (const auto& v : a.data())
    if (v.imag() != 0.0) return false;
  return true;
}

double hermiticity_defect(const CMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::invalid_dimension, "hermiticity of a non-square matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(s);
}

void require_finite(const CMatrix& a, const char* what) {
  for (const auto& v : a.data())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::invalid_input, std::string(what) + " contains a non-finite entry");
}

CMatrix from_real(const Matrix<double>& a) {
  CMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = a.data()[k];
  return c;
}

}  // namespace ptlab
