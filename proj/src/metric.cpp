#include "ptlab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ptlab/boundary.hpp"
#include "ptlab/eigen.hpp"

namespace ptlab {

LinearForm LinearForm::unit(std::size_t arity, std::size_t slot) {
  LinearForm f = zero(arity);
  f.coefficients.at(slot) = 1.0;
  return f;
}

double LinearForm::evaluate(std::span<const double> x) const {
  if (x.size() != coefficients.size())
    throw Error(ErrorKind::invalid_parameter, "parameter vector has " + std::to_string(x.size()) +
                                                  " entries, family expects " + std::to_string(coefficients.size()));
  double v = constant;
  for (std::size_t k = 0; k < x.size(); ++k) v += coefficients[k] * x[k];
  return v;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  for (std::size_t k = 0; k < coefficients.size(); ++k) coefficients[k] += o.coefficients[k];
  constant += o.constant;
  return *this;
}

LinearForm& LinearForm::operator*=(double s) {
  for (auto& c : coefficients) c *= s;
  constant *= s;
  return *this;
}

double LinearForm::magnitude() const {
  double m = std::abs(constant);
  for (double c : coefficients) m = std::max(m, std::abs(c));
  return m;
}

CMatrix MetricFamily::instantiate(std::span<const double> x) const {
  CMatrix t(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) t(i, j) = entry(i, j).evaluate(x);
  return t;
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive_definite: return "positive-definite";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::singular: return "singular";
  }
  return "?";
}

double dieudonne_residual(const CMatrix& h, const CMatrix& theta) {
  if (!h.square() || h.rows() != theta.rows() || !theta.square())
    throw Error(ErrorKind::invalid_dimension, "Hamiltonian and metric dimensions differ");
  return frobenius_norm(adjoint(h) * theta - theta * h);
}

double observable_check(const CMatrix& lambda_op, const CMatrix& theta) {
  if (!lambda_op.square() || lambda_op.rows() != theta.rows() || !theta.square())
    throw Error(ErrorKind::invalid_dimension, "observable and metric dimensions differ");
  return frobenius_norm(adjoint(lambda_op) * theta - theta * lambda_op);
}

PositivityReport positivity(const CMatrix& theta, double tol) {
  if (!theta.square() || theta.empty()) throw Error(ErrorKind::invalid_dimension, "metric must be square");
  require_finite(theta, "metric");
  if (hermiticity_defect(theta) > 1e-12 * std::max(1.0, frobenius_norm(theta)))
    throw Error(ErrorKind::invalid_input, "metric candidate is not Hermitian");
  PositivityReport r;
  r.eigenvalues = hermitian_eigen(theta).values;
  r.min_eigenvalue = r.eigenvalues.front();
  if (r.min_eigenvalue > tol)
    r.classification = Definiteness::positive_definite;
  else if (r.min_eigenvalue < -tol)
    r.classification = Definiteness::indefinite;
  else
    r.classification = Definiteness::singular;
  return r;
}

MetricCertificate certify(const CMatrix& h, const CMatrix& theta, double tol) {
  MetricCertificate c;
  c.theta = theta;
  c.dieudonne_residual = dieudonne_residual(h, theta);
  const auto p = positivity(theta, tol);
  c.min_eigenvalue = p.min_eigenvalue;
  c.classification = p.classification;
  return c;
}

std::vector<ConjugateEigenvector> conjugate_eigenvectors(const CMatrix& h) {
  if (!h.square()) throw Error(ErrorKind::invalid_dimension, "Hamiltonian must be square");
  const auto dec = eigenpairs(adjoint(h));
  if (!dec.complete()) {
    const Complex e = dec.deficient.front().eigenvalue;
    throw Deficiency(e, "conjugate Hamiltonian is not diagonalizable at E = " + std::to_string(e.real()) +
                            (e.imag() != 0.0 ? (e.imag() > 0 ? "+" : "") + std::to_string(e.imag()) + "i" : ""));
  }
  std::vector<ConjugateEigenvector> out;
  out.reserve(dec.pairs.size());
  for (const auto& p : dec.pairs) out.push_back({p.value, p.vector});
  return out;
}

namespace {
std::vector<double> resolve_kappa(std::span<const double> kappa, std::size_t n) {
  if (kappa.empty()) return std::vector<double>(n, 1.0);
  if (kappa.size() != n)
    throw Error(ErrorKind::invalid_parameter, "kappa needs " + std::to_string(n) + " weights");
  for (double k : kappa)
    if (k == 0.0 || !std::isfinite(k)) throw Error(ErrorKind::invalid_parameter, "kappa weights must be nonzero and finite");
  return {kappa.begin(), kappa.end()};
}
}  // namespace

MetricCertificate metric_from_kets(const CMatrix& h, const std::vector<ConjugateEigenvector>& kets,
                                   std::span<const double> kappa) {
  const std::size_t n = h.rows();
  if (kets.size() != n) throw Error(ErrorKind::invalid_input, "need one ket per eigenvalue");
  const auto w = resolve_kappa(kappa, n);
  CMatrix theta(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double nrm = norm2(kets[k].ket);
    if (nrm == 0.0) throw Error(ErrorKind::invalid_input, "zero ket");
    const double scale = w[k] * w[k] / (nrm * nrm);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) theta(i, j) += scale * kets[k].ket[i] * std::conj(kets[k].ket[j]);
  }
  // remove rounding asymmetry so the certificate sees an exactly Hermitian matrix
  for (std::size_t i = 0; i < n; ++i) {
    theta(i, i) = theta(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (theta(i, j) + std::conj(theta(j, i)));
      theta(i, j) = avg;
      theta(j, i) = std::conj(avg);
    }
  }
  return certify(h, theta);
}

MetricCertificate metric_spectral(const CMatrix& h, std::span<const double> kappa) {
  const auto w = resolve_kappa(kappa, h.rows());
  return metric_from_kets(h, conjugate_eigenvectors(h), w);
}

CVector chi_vector(const EndpointModel& model, Complex energy, Complex x) {
  model.validate();
  for (const auto& v : model.beta)
    if (v != 0.0) throw Error(ErrorKind::unsupported_model, "closed-form kets need beta = 0");
  if (model.b != 0.0) throw Error(ErrorKind::unsupported_model, "closed-form kets need b = 0");
  const std::size_t n = model.n;
  const Complex two_y = 2.0 - energy;
  const Complex t = t_from_energy(energy);
  CVector u(n);
  u[0] = two_y - model.z;
  for (std::size_t j = 1; j < n; ++j) u[j] = model.alpha[j - 1];
  u[1] -= 1.0;
  std::reverse(u.begin(), u.end());
  const CMatrix s_inv = triangular_u(t, n) * triangular_u(1.0 / t, n);
  CVector chi = s_inv * std::span<const Complex>(u);
  for (auto& c : chi) c *= x;
  chi.push_back(x);
  return chi;
}

std::vector<ConjugateEigenvector> chi_kets(const EndpointModel& model) {
  const CMatrix h = build_endpoint_hamiltonian(model);
  const auto spec = eigenvalues(h);
  std::vector<ConjugateEigenvector> out;
  for (const Complex e : spec.eigenvalues) {
    CVector k = chi_vector(model, e);
    const double nrm = norm2(k);
    for (auto& v : k) v /= nrm;
    out.push_back({e, std::move(k)});
  }
  return out;
}

std::vector<Seed> first_row_seeds(std::size_t dim) {
  std::vector<Seed> s;
  for (std::size_t j = 0; j < dim; ++j) s.push_back({0, j, "x" + std::to_string(j + 1)});
  return s;
}

MetricFamily recurrent_metric_family(const CMatrix& h, const std::vector<Seed>& seeds_in) {
  if (!h.square() || h.empty()) throw Error(ErrorKind::invalid_dimension, "Hamiltonian must be square");
  if (!is_real(h)) throw Error(ErrorKind::invalid_input, "recurrent construction needs a real Hamiltonian");
  const std::size_t n = h.rows();
  const auto seeds = seeds_in.empty() ? first_row_seeds(n) : seeds_in;
  const std::size_t arity = seeds.size();

  auto slot = [n](std::size_t i, std::size_t j) { return i <= j ? i * n + j : j * n + i; };
  std::vector<std::optional<LinearForm>> theta(n * n);
  for (std::size_t k = 0; k < arity; ++k) {
    if (seeds[k].row >= n || seeds[k].col >= n) throw Error(ErrorKind::invalid_parameter, "seed outside the matrix");
    auto& cell = theta[slot(seeds[k].row, seeds[k].col)];
    if (cell) throw Error(ErrorKind::invalid_parameter, "duplicate seed position");
    cell = LinearForm::unit(arity, k);
  }

  double scale = 1.0;
  for (const auto& v : h.data()) scale = std::max(scale, std::abs(v));
  const double pivot_floor = 1e-12;
  const double zero_floor = 1e-14 * scale;

  // (H^T Θ − Θ H)_{ij}: coefficient of each symmetric slot
  auto equation = [&](std::size_t i, std::size_t j) {
    std::map<std::size_t, double> coef;
    for (std::size_t k = 0; k < n; ++k) {
      coef[slot(k, j)] += h(k, i).real();
      coef[slot(i, k)] -= h(k, j).real();
    }
    return coef;
  };

  struct Pending {
    std::size_t i, j;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pending.push_back({i, j});

  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const auto coef = equation(it->i, it->j);
      LinearForm known = LinearForm::zero(arity);
      std::vector<std::pair<std::size_t, double>> unknown;
      for (const auto& [s, c] : coef) {
        if (std::abs(c) <= zero_floor) continue;
        if (theta[s]) {
          LinearForm f = *theta[s];
          f *= c;
          known += f;
        } else {
          unknown.emplace_back(s, c);
        }
      }
      if (unknown.size() == 1 && std::abs(unknown[0].second) > pivot_floor) {
        known *= -1.0 / unknown[0].second;
        theta[unknown[0].first] = known;
        it = pending.erase(it);
        progress = true;
      } else if (unknown.empty()) {
        if (known.magnitude() > 1e-9 * scale)
          throw Error(ErrorKind::singular_parameter,
                      "equation (" + std::to_string(it->i) + "," + std::to_string(it->j) +
                          ") constrains the free parameters; the pivot vanished at this parameter value");
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> unresolved;
  std::vector<std::size_t> open_slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!theta[slot(i, j)]) {
        unresolved.emplace_back(i, j);
        open_slots.push_back(slot(i, j));
      }
  if (!unresolved.empty()) {
    for (const auto& p : pending) {
      bool all_tiny = true;
      for (const auto& [s, c] : equation(p.i, p.j))
        if (!theta[s] && std::abs(c) > pivot_floor) all_tiny = false;
      if (all_tiny)
        throw Error(ErrorKind::singular_parameter,
                    "pivot of equation (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") is below 1e-12");
    }
    // No equation has a single unknown left: solve the remaining coupled block A·θ = −K at once.
    const std::size_t rows = pending.size(), cols = open_slots.size();
    CMatrix a(rows, cols);
    std::vector<LinearForm> rhs(rows, LinearForm::zero(arity));
    for (std::size_t r = 0; r < rows; ++r)
      for (const auto& [s, c] : equation(pending[r].i, pending[r].j)) {
        if (std::abs(c) <= zero_floor) continue;
        if (theta[s]) {
          LinearForm f = *theta[s];
          f *= -c;
          rhs[r] += f;
        } else {
          const auto col = std::find(open_slots.begin(), open_slots.end(), s) - open_slots.begin();
          a(r, static_cast<std::size_t>(col)) = c;
        }
      }
    const auto sv = rows >= cols ? svd(a).singular_values : std::vector<double>{};
    if (sv.empty() || sv.back() <= std::max(pivot_floor, 1e-10 * sv.front())) {
      std::string list;
      for (const auto& [i, j] : unresolved) list += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
      throw NotRecurrentlySolvable(unresolved, "elimination stalled with unresolved entries" + list);
    }
    // least squares through the normal equations; the block is small and well conditioned here
    const CMatrix at = transpose(a);
    const CMatrix gram_inv = inverse(at * a);
    const CMatrix pinv = gram_inv * at;
    for (std::size_t c = 0; c < cols; ++c) {
      LinearForm f = LinearForm::zero(arity);
      for (std::size_t r = 0; r < rows; ++r) {
        LinearForm g = rhs[r];
        g *= pinv(c, r).real();
        f += g;
      }
      theta[open_slots[c]] = f;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      LinearForm left = LinearForm::zero(arity);
      for (std::size_t c = 0; c < cols; ++c) {
        if (a(r, c) == 0.0) continue;
        LinearForm g = *theta[open_slots[c]];
        g *= a(r, c).real();
        left += g;
      }
      left *= -1.0;
      left += rhs[r];
      if (left.magnitude() > 1e-9 * scale * std::max(1.0, rhs[r].magnitude()))
        throw Error(ErrorKind::singular_parameter,
                    "equation (" + std::to_string(pending[r].i) + "," + std::to_string(pending[r].j) +
                        ") constrains the free parameters");
    }
  }

  MetricFamily fam;
  fam.dim = n;
  fam.entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) fam.entries.push_back(*theta[slot(i, j)]);
  for (const auto& s : seeds) fam.parameter_names.push_back(s.name);
  fam.model_tag = "real " + std::to_string(n) + "x" + std::to_string(n);
  return fam;
}

std::vector<CMatrix> sylvester_nullspace(const CMatrix& h, double threshold) {
  if (!h.square() || h.empty()) throw Error(ErrorKind::invalid_dimension, "Hamiltonian must be square");
  const std::size_t n = h.rows();
  const bool real = is_real(h);
  const double r2 = std::sqrt(0.5);

  // Frobenius-orthonormal basis of the real vector space of admissible Θ
  std::vector<CMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      CMatrix e(n, n);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = r2;
        e(j, i) = r2;
      }
      basis.push_back(std::move(e));
      if (!real && i != j) {
        CMatrix f(n, n);
        f(i, j) = Complex(0.0, r2);
        f(j, i) = Complex(0.0, -r2);
        basis.push_back(std::move(f));
      }
    }

  // real-linear map Θ ↦ H†Θ − ΘH written over real and imaginary parts
  const CMatrix hd = adjoint(h);
  const std::size_t rows = real ? n * n : 2 * n * n;
  CMatrix a(rows, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const CMatrix img = hd * basis[c] - basis[c] * h;
    for (std::size_t k = 0; k < n * n; ++k) {
      a(k, c) = img.data()[k].real();
      if (!real) a(n * n + k, c) = img.data()[k].imag();
    }
  }
  const SvdResult sv = svd(a);
  const double top = sv.singular_values.empty() ? 0.0 : sv.singular_values.front();
  const double cut = threshold * std::max(1.0, top);
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double sigma = k < sv.singular_values.size() ? sv.singular_values[k] : 0.0;
    if (sigma > cut) continue;
    CMatrix t(n, n);
    for (std::size_t c = 0; c < basis.size(); ++c) t = t + sv.v(c, k).real() * basis[c];
    out.push_back(std::move(t));
  }
  return out;
}

CMatrix DiagonalMetric::matrix(std::size_t dim) const {
  CMatrix t(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) t(i, i) = d;
  t(0, 0) = m0;
  t(dim - 1, dim - 1) = mN;
  return t;
}

std::optional<DiagonalMetric> diagonal_metric(const EndpointModel& model) {
  model.validate();
  if (!model.is_real()) throw Error(ErrorKind::invalid_input, "diagonal metric search needs a real model");
  const CMatrix h = build_endpoint_hamiltonian(model);
  const std::size_t dim = h.rows();
  const std::size_t last = dim - 1;
  // Θ = m0·E00 + mN·ENN + D with D the unit inner diagonal; residual is affine in (m0, mN)
  CMatrix e0(dim, dim), en(dim, dim), inner(dim, dim);
  e0(0, 0) = 1.0;
  en(last, last) = 1.0;
  for (std::size_t i = 1; i < last; ++i) inner(i, i) = 1.0;
  const CMatrix hd = adjoint(h);
  const CMatrix g0 = hd * e0 - e0 * h, gn = hd * en - en * h, c = hd * inner - inner * h;
  // least squares over real unknowns through the 2×2 normal equations
  double a00 = 0, a01 = 0, a11 = 0, r0 = 0, r1 = 0;
  for (std::size_t k = 0; k < dim * dim; ++k) {
    const Complex x = g0.data()[k], y = gn.data()[k], z = c.data()[k];
    a00 += std::norm(x);
    a11 += std::norm(y);
    a01 += (std::conj(x) * y).real();
    r0 -= (std::conj(x) * z).real();
    r1 -= (std::conj(y) * z).real();
  }
  const double det = a00 * a11 - a01 * a01;
  DiagonalMetric dm;
  if (std::abs(det) > 1e-14 * std::max(1.0, a00 * a11)) {
    dm.m0 = (r0 * a11 - r1 * a01) / det;
    dm.mN = (a00 * r1 - a01 * r0) / det;
  } else {
    // the endpoint weights are unconstrained by the equation (no endpoint coupling): impose m0 = mN = d
    dm.m0 = 1.0;
    dm.mN = 1.0;
  }
  if (!(dm.m0 > 0.0) || !(dm.mN > 0.0)) return std::nullopt;
  const CMatrix theta = dm.matrix(dim);
  if (dieudonne_residual(h, theta) > 1e-12 * std::max(1.0, frobenius_norm(h))) return std::nullopt;
  if (std::abs(dm.m0 * dm.mN - dm.d * dm.d) > 1e-10 * std::max(1.0, dm.m0 * dm.mN)) return std::nullopt;
  return dm;
}

}  // namespace ptlab
