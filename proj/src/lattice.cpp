#include "ptlab/lattice.hpp"

#include <cmath>
#include <string>

namespace ptlab {

namespace {
bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }
}  // namespace

void EndpointModel::validate() const {
  if (n < 2) throw Error(ErrorKind::invalid_model, "site bound n must be at least 2");
  if (alpha.size() != n - 1)
    throw Error(ErrorKind::invalid_model, "alpha must have n-1 = " + std::to_string(n - 1) + " entries, got " +
                                              std::to_string(alpha.size()));
  if (beta.size() != n - 1)
    throw Error(ErrorKind::invalid_model, "beta must have n-1 = " + std::to_string(n - 1) + " entries, got " +
                                              std::to_string(beta.size()));
  bool ok = finite(z) && std::isfinite(a) && std::isfinite(b);
  for (const auto& v : alpha) ok = ok && finite(v);
  for (const auto& v : beta) ok = ok && finite(v);
  if (!ok) throw Error(ErrorKind::invalid_model, "non-finite model parameter");
}

bool EndpointModel::is_real() const {
  if (z.imag() != 0.0) return false;
  for (const auto& v : alpha)
    if (v.imag() != 0.0) return false;
  for (const auto& v : beta)
    if (v.imag() != 0.0) return false;
  return true;
}

EndpointModel local_model(std::size_t n, Complex z) {
  EndpointModel m;
  m.n = n;
  m.z = z;
  m.alpha.assign(n >= 1 ? n - 1 : 0, 0.0);
  m.beta.assign(n >= 1 ? n - 1 : 0, 0.0);
  return m;
}

BinaryIndex BinaryIndex::parse(const std::string& text) {
  auto bits = [](const std::string& s) {
    std::vector<std::uint8_t> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      const char c = s[s.size() - 1 - k];
      if (c != '0' && c != '1') throw Error(ErrorKind::invalid_input, "binary index digits must be 0 or 1");
      out[k] = static_cast<std::uint8_t>(c - '0');
    }
    return out;
  };
  BinaryIndex rho;
  const auto plus = text.find("+i");
  rho.sigma = bits(text.substr(0, plus));
  rho.tau = plus == std::string::npos ? std::vector<std::uint8_t>(rho.sigma.size(), 0) : bits(text.substr(plus + 2));
  rho.validate();
  return rho;
}

void BinaryIndex::validate() const {
  if (sigma.size() < 2) throw Error(ErrorKind::invalid_dimension, "binary index needs at least two digits");
  if (tau.size() != sigma.size()) throw Error(ErrorKind::invalid_dimension, "sigma and tau lengths differ");
  for (auto v : sigma)
    if (v > 1) throw Error(ErrorKind::invalid_input, "sigma digits must be 0 or 1");
  for (auto v : tau)
    if (v > 1) throw Error(ErrorKind::invalid_input, "tau digits must be 0 or 1");
}

BinaryIndex rho_a() { return BinaryIndex::parse("00001"); }
BinaryIndex rho_b() { return BinaryIndex::parse("11111"); }
BinaryIndex rho_c() { return BinaryIndex::parse("11000"); }

CMatrix build_kinetic(std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::invalid_dimension, "kinetic matrix dimension must be positive");
  CMatrix t(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    t(i, i) = 2.0;
    if (i + 1 < dim) {
      t(i, i + 1) = -1.0;
      t(i + 1, i) = -1.0;
    }
  }
  return t;
}

CMatrix build_parity(std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::invalid_dimension, "parity dimension must be positive");
  CMatrix p(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) p(i, dim - 1 - i) = 1.0;
  return p;
}

CMatrix build_endpoint_hamiltonian(const EndpointModel& m) {
  m.validate();
  const std::size_t n = m.n;
  CMatrix h = build_kinetic(n + 1);
  h(0, 0) = 2.0 - m.z;
  h(n, n) = 2.0 - std::conj(m.z);
  for (std::size_t j = 1; j < n; ++j) {
    const double kin_first = j == 1 ? 1.0 : 0.0;
    const double kin_last = j == n - 1 ? 1.0 : 0.0;
    h(0, j) = std::conj(m.beta[n - j - 1]) - kin_first;
    h(j, 0) = m.alpha[j - 1] - kin_first;
    h(n, j) = std::conj(m.alpha[n - j - 1]) - kin_last;
    h(j, n) = m.beta[j - 1] - kin_last;
  }
  h(n, 0) = m.a;
  h(0, n) = m.b;
  return h;
}

CMatrix build_interaction(std::span<const Complex> b_col, std::span<const Complex> d_col,
                          std::span<const Complex> a_row, std::span<const Complex> c_row) {
  const std::size_t dim = b_col.size();
  if (dim < 2) throw Error(ErrorKind::invalid_model, "interaction needs at least two sites");
  if (d_col.size() != dim) throw Error(ErrorKind::invalid_model, "d column length must equal b column length");
  if (a_row.size() != dim - 2 || c_row.size() != dim - 2)
    throw Error(ErrorKind::invalid_model, "inner row vectors must have N-1 entries");
  const std::size_t n = dim - 1;
  CMatrix v(dim, dim);
  for (std::size_t i = 0; i <= n; ++i) {
    v(i, 0) = b_col[i];
    v(i, n) = d_col[i];
  }
  for (std::size_t j = 1; j < n; ++j) {
    v(0, j) = std::conj(a_row[j - 1]);
    v(n, j) = std::conj(c_row[j - 1]);
  }
  require_finite(v, "interaction");
  return v;
}

CMatrix build_rho_potential(const BinaryIndex& rho) {
  rho.validate();
  const std::size_t dim = rho.dim();
  const std::size_t n = dim - 1;
  CMatrix v(dim, dim);
  for (std::size_t j = 0; j < n; ++j) v(0, j) = Complex(rho.sigma[n - j], -static_cast<double>(rho.tau[n - j]));
  v(0, n) = static_cast<double>(rho.sigma[0]);
  for (std::size_t j = 1; j <= n; ++j) v(j, n) = Complex(rho.sigma[j], rho.tau[j]);
  return v;
}

EndpointModel rho_model(const BinaryIndex& rho, double coupling) {
  rho.validate();
  const std::size_t n = rho.dim() - 1;
  if (n < 2) throw Error(ErrorKind::invalid_dimension, "rho model needs at least three sites");
  EndpointModel m = local_model(n, -coupling * Complex(rho.sigma[n], -static_cast<double>(rho.tau[n])));
  for (std::size_t j = 1; j < n; ++j) m.beta[j - 1] = coupling * Complex(rho.sigma[j], rho.tau[j]);
  m.b = coupling * rho.sigma[0];
  return m;
}

QMatrix rho_hamiltonian_exact(const BinaryIndex& rho, const Rational& coupling) {
  rho.validate();
  for (auto t : rho.tau)
    if (t != 0) throw Error(ErrorKind::unsupported_model, "exact rho Hamiltonian needs tau = 0");
  const std::size_t dim = rho.dim();
  const std::size_t n = dim - 1;
  QMatrix h(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    h(i, i) = 2;
    if (i + 1 < dim) {
      h(i, i + 1) = -1;
      h(i + 1, i) = -1;
    }
  }
  for (std::size_t j = 0; j < n; ++j) h(0, j) += coupling * Rational(rho.sigma[n - j]);
  h(0, n) += coupling * Rational(rho.sigma[0]);
  for (std::size_t j = 1; j <= n; ++j) h(j, n) += coupling * Rational(rho.sigma[j]);
  return h;
}

Complex robin_to_z(double xi, double zeta) {
  if (!std::isfinite(xi) || !std::isfinite(zeta))
    throw Error(ErrorKind::invalid_parameter, "Robin parameters must be finite");
  const Complex denom(1.0 - xi, -zeta);
  if (denom == Complex(0.0)) throw Error(ErrorKind::singular_parameter, "Robin map has a pole at xi = 1, zeta = 0");
  return 1.0 / denom;
}

double check_pt_symmetry(const CMatrix& h) {
  if (!h.square()) throw Error(ErrorKind::invalid_dimension, "PT check needs a square matrix");
  const CMatrix p = build_parity(h.rows());
  return frobenius_norm(adjoint(h) * p - p * h);
}

}  // namespace ptlab
