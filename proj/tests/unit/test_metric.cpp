#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "ptlab/eigen.hpp"
#include "ptlab/metric.hpp"
#include "ptlab/presets.hpp"
#include "ptlab/sweep.hpp"

using namespace ptlab;

namespace {

CMatrix hc(double r) { return build_endpoint_hamiltonian(preset_model("hc", r)); }
CMatrix h7(double r) { return build_endpoint_hamiltonian(preset_model("h7", r)); }

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m(d.size(), d.size());
  std::size_t k = 0;
  for (double v : d) m(k, k) = v, ++k;
  return m;
}

/// Closed-form Θ(t,u,z,q,p) for H_c(R).
CMatrix hc_closed_form(double R, double t, double u, double z, double q, double p) {
  const double m00 = (R * z - t + z + R * u + R * q + p) / (-1 + R);
  const double m11 = -R * q - p + t - R * z;
  const double m44 = -z + R * p - R * q + R * R * q - p - R * u + t - t * R + R * R * z + R * R * u;
  const double a = R * z + u + q, b = R * q + z + p;
  return {{m00, u, z, q, p},
          {u, m11, a, b, q - R * q},
          {z, a, t, a, z - R * z},
          {q, b, a, m11, u - R * u},
          {p, q - R * q, z - R * z, u - R * u, m44}};
}

/// Closed-form Θ^(7)(1,0,…,0).
CMatrix h7_e1_closed_form(double R) {
  const double s = R / (R - 1);
  CMatrix m = CMatrix::identity(7);
  for (int i = 1; i <= 4; ++i) m(i, i + 1) = m(i + 1, i) = s;
  m(4, 6) = m(6, 4) = -R * R / (R - 1);
  m(5, 5) = 1 + R * R;
  m(5, 6) = m(6, 5) = -(R * R * R + 2 * R * R - 2 * R) / (R - 1);
  m(6, 6) = (2 * std::pow(R, 4) - 2 * R + 1) / (R * R - 2 * R + 1);
  return m;
}

/// Largest distance from the span of `b` over the members of `a` (both Frobenius-orthonormalized).
double span_gap(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  // Gram–Schmidt on b
  std::vector<CMatrix> q;
  auto dot = [](const CMatrix& x, const CMatrix& y) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < x.data().size(); ++k) s += std::conj(x.data()[k]) * y.data()[k];
    return s;
  };
  for (CMatrix v : b) {
    for (const auto& e : q) v = v - dot(e, v) * e;
    const double n = frobenius_norm(v);
    if (n > 1e-10) q.push_back((1.0 / n) * v);
  }
  double worst = 0.0;
  for (CMatrix v : a) {
    v = (1.0 / frobenius_norm(v)) * v;
    for (const auto& e : q) v = v - dot(e, v) * e;
    worst = std::max(worst, frobenius_norm(v));
  }
  return worst;
}

std::vector<CMatrix> unit_instantiations(const MetricFamily& fam) {
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < fam.arity(); ++k) {
    std::vector<double> x(fam.arity(), 0.0);
    x[k] = 1.0;
    out.push_back(fam.instantiate(x));
  }
  return out;
}

}  // namespace

TEST_CASE("Dieudonne residual") {
  CHECK(dieudonne_residual(build_kinetic(5), CMatrix::identity(5)) == 0.0);
  for (double r : {-1.0, 0.3, 0.9}) {
    const double s = 1 - r;
    CHECK(dieudonne_residual(hc(r), diag({1, s, s, s, s * s})) <= 1e-12);
  }
  CHECK(dieudonne_residual(hc(0.5), CMatrix::identity(5)) > 0.1);
  CHECK_THROWS_AS(dieudonne_residual(hc(0.5), CMatrix::identity(4)), Error);
}

TEST_CASE("observable check") {
  const CMatrix h = hc(0.4);
  const auto dm = diagonal_metric(preset_model("hc", 0.4));
  REQUIRE(dm);
  const CMatrix theta = dm->matrix(5);
  CHECK(observable_check(h, theta) == dieudonne_residual(h, theta));
  CHECK(observable_check(diag({1, -2, 3}), diag({4, 5, 6})) == 0.0);
  CHECK(observable_check(build_parity(6), CMatrix::identity(6)) == 0.0);
  CHECK_THROWS_AS(observable_check(build_parity(3), CMatrix::identity(4)), Error);
}

TEST_CASE("positivity classification") {
  const auto id = positivity(CMatrix::identity(4));
  CHECK(std::abs(id.min_eigenvalue - 1.0) < 1e-14);
  CHECK(id.classification == Definiteness::positive_definite);

  const auto d = positivity(diag({1, 0.5, 0.5, 0.5, 0.25}));
  CHECK(std::abs(d.min_eigenvalue - 0.25) < 1e-14);

  const double r = 1.2, s = 1 - r;
  CHECK(positivity(diag({1, s, s, s, s * s})).classification == Definiteness::indefinite);
  CHECK(positivity(hc_metric(1.2, 1, 0, 0, 0, 0)).classification == Definiteness::indefinite);
  CHECK(positivity(diag({1, 0})).classification == Definiteness::singular);

  CMatrix skew{{1.0, 2.0}, {0.0, 1.0}};
  try {
    positivity(skew);
    FAIL("expected invalid-input");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
  }
}

TEST_CASE("conjugate eigenvectors") {
  const CMatrix t = build_kinetic(4);
  const auto kets = conjugate_eigenvectors(t);
  const auto pairs = eigenpairs(t).pairs;
  REQUIRE(kets.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(kets[k].energy - pairs[k].value) < 1e-12);
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(kets[k].ket[i]) * pairs[k].vector[i];
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-10);
  }

  const CMatrix h = build_endpoint_hamiltonian(local_model(4, Complex(0.4, 0.3)));
  const auto ck = conjugate_eigenvectors(h);
  CVector e1, e2 = oracle::eigenvalues(h);
  for (const auto& k : ck) e1.push_back(std::conj(k.energy));
  oracle::sort_complex(e1);
  for (std::size_t k = 0; k < e1.size(); ++k) CHECK(std::abs(e1[k] - e2[k]) < 1e-9);
  const CMatrix hd = adjoint(h);
  for (const auto& k : ck) {
    const CVector v = hd * std::span<const Complex>(k.ket);
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(v[i] - k.energy * k.ket[i]);
    CHECK(std::sqrt(res) <= 1e-10 * frobenius_norm(h));
  }

  try {
    conjugate_eigenvectors(hc(1.0));
    FAIL("expected deficiency");
  } catch (const Deficiency& e) {
    CHECK(std::abs(e.eigenvalue() - 3.0) < 1e-6);
  }
}

TEST_CASE("spectral-expansion metric") {
  const auto herm = metric_spectral(build_kinetic(5));
  CHECK(oracle::max_diff(herm.theta, CMatrix::identity(5)) < 1e-12);

  // three sites: the spectrum is real (with four sites z = 1 + i/2 already gives a complex pair)
  const CMatrix h = build_endpoint_hamiltonian(local_model(2, Complex(1.0, 0.5)));
  CHECK(oracle::real_eigenvalues(h).size() == 3);
  const auto cert = metric_spectral(h);
  CHECK(cert.classification == Definiteness::positive_definite);
  CHECK(cert.dieudonne_residual <= 1e-9 * frobenius_norm(h));

  const std::vector<double> k1{1.0, 2.0, 0.5};
  std::vector<double> k2 = k1;
  for (auto& v : k2) v *= 1.5;
  const auto c1 = metric_spectral(h, k1), c2 = metric_spectral(h, k2);
  CHECK(oracle::max_diff(2.25 * c1.theta, c2.theta) < 1e-12);

  const std::vector<double> bad{1.0, 0.0, 1.0};
  try {
    metric_spectral(h, bad);
    FAIL("expected invalid-parameter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_parameter);
  }
  CHECK_THROWS_AS(metric_spectral(hc(1.0)), Deficiency);
}

TEST_CASE("closed-form kets for beta = 0") {
  EndpointModel m = local_model(3, 0.35);
  const CMatrix h = build_endpoint_hamiltonian(m);
  const CMatrix hd = adjoint(h);
  for (Complex e : oracle::eigenvalues(h)) {
    const CVector k = chi_vector(m, e);
    const CVector v = hd * std::span<const Complex>(k);
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(v[i] - e * k[i]);
    CHECK(std::sqrt(res) <= 1e-8 * norm2(k));

    const CVector k3 = chi_vector(m, e, 3.0);
    for (std::size_t i = 0; i < k.size(); ++i) CHECK(k3[i] == 3.0 * k[i]);
  }
  const auto a = metric_from_kets(h, chi_kets(m));
  const auto b = metric_spectral(h);
  CHECK(oracle::max_diff(a.theta, b.theta) < 1e-8);

  EndpointModel withb = m;
  withb.b = 0.2;
  CHECK_THROWS_AS(chi_vector(withb, 1.0), Error);
  EndpointModel withbeta = m;
  withbeta.beta[0] = 0.1;
  try {
    chi_vector(withbeta, 1.0);
    FAIL("expected unsupported-model");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported_model);
  }
}

TEST_CASE("recurrent family of H_c reproduces the closed form") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0), rr(-2.0, 0.95);
  for (int trial = 0; trial < 8; ++trial) {
    const double R = rr(rng);
    const auto fam = hc_metric_family(R);
    CHECK(fam.arity() == 5);
    const double t = u(rng), uu = u(rng), z = u(rng), q = u(rng), p = u(rng);
    const double x[] = {t, uu, z, q, p};
    const CMatrix theta = fam.instantiate(x);
    CHECK(oracle::max_diff(theta, hc_closed_form(R, t, uu, z, q, p)) < 1e-10);
    CHECK(dieudonne_residual(hc(R), theta) <= 1e-9);
  }
  // individual forms at one R
  const double R = 0.3;
  const auto fam = hc_metric_family(R);
  auto coeffs = [&](std::size_t i, std::size_t j) { return fam.entry(i, j).coefficients; };
  // parameter order (t, u, z, q, p)
  auto near = [](const std::vector<double>& a, std::vector<double> b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (std::abs(a[k] - b[k]) > 1e-12) return false;
    return true;
  };
  CHECK(near(coeffs(1, 4), {0, 0, 0, 1 - R, 0}));
  CHECK(near(coeffs(1, 3), {0, 0, 1, R, 1}));
  CHECK(near(coeffs(1, 2), {0, 1, R, 1, 0}));
  CHECK(near(coeffs(1, 1), {1, 0, -R, -R, -1}));
  CHECK(near(coeffs(3, 3), coeffs(1, 1)));
  CHECK(near(coeffs(0, 0), {-1 / (R - 1), R / (R - 1), (R + 1) / (R - 1), R / (R - 1), 1 / (R - 1)}));
}

TEST_CASE("recurrent family on general real models") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = oracle::random_model(rng, 3 + trial % 5, 0.6, false);
    const CMatrix h = build_endpoint_hamiltonian(m);
    const auto fam = recurrent_metric_family(h);
    for (int draw = 0; draw < 10; ++draw) {
      std::vector<double> x(fam.arity());
      for (auto& v : x) v = u(rng);
      CHECK(dieudonne_residual(h, fam.instantiate(x)) <= 1e-9 * std::max(1.0, frobenius_norm(h)));
    }
  }
}

TEST_CASE("recurrent family errors") {
  try {
    hc_metric_family(1.0);
    FAIL("expected singular-parameter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_parameter);
  }
  CHECK_THROWS_AS(recurrent_metric_family(build_endpoint_hamiltonian(local_model(3, Complex(0.1, 0.2)))), Error);
  // a single free parameter cannot pin down a 4×4 family: elimination stalls
  try {
    recurrent_metric_family(build_kinetic(4), {{0, 0, "a"}});
    FAIL("expected a stall");
  } catch (const NotRecurrentlySolvable& e) {
    CHECK_FALSE(e.unresolved().empty());
  }
}

TEST_CASE("H7 family: sparse candidate and parity") {
  for (double R : {0.1, 0.3, -0.4}) {
    const auto fam = recurrent_metric_family(h7(R));
    std::vector<double> e1(7, 0.0), e7(7, 0.0);
    e1[0] = 1.0;
    e7[6] = 1.0;
    CHECK(oracle::max_diff(fam.instantiate(e1), h7_e1_closed_form(R)) < 1e-12);
    CHECK(fam.instantiate(e7) == build_parity(7));
    const CMatrix th = fam.instantiate(e1);
    CHECK(std::abs(th(1, 2) - R / (R - 1)) < 1e-12);
    CHECK(std::abs(th(6, 6) - (2 * std::pow(R, 4) - 2 * R + 1) / (R * R - 2 * R + 1)) < 1e-12);
  }
  const auto small = recurrent_metric_family(h7(1e-9));
  std::vector<double> e1(7, 0.0);
  e1[0] = 1.0;
  CHECK(oracle::max_diff(small.instantiate(e1), CMatrix::identity(7)) < 1e-8);
}

TEST_CASE("Sylvester null space") {
  CHECK(sylvester_nullspace(hc(0.4)).size() == 5);
  CHECK(sylvester_nullspace(hc(-1.3)).size() == 5);
  CHECK(sylvester_nullspace(h7(0.2)).size() == 7);
  CHECK(sylvester_nullspace(build_kinetic(3)).size() == 3);

  for (const auto& th : sylvester_nullspace(hc(0.4))) {
    CHECK(dieudonne_residual(hc(0.4), th) <= 1e-9);
    CHECK(std::abs(frobenius_norm(th) - 1.0) < 1e-10);
  }
  // complex Hamiltonian: Hermitian solutions
  const CMatrix hcplx = build_endpoint_hamiltonian(local_model(3, Complex(0.2, 0.3)));
  const auto basis = sylvester_nullspace(hcplx);
  CHECK(basis.size() == 4);
  for (const auto& th : basis) {
    CHECK(hermiticity_defect(th) < 1e-12);
    CHECK(dieudonne_residual(hcplx, th) <= 1e-9);
  }
}

TEST_CASE("recurrent family spans the full solution space") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 0.9);
  for (int trial = 0; trial < 10; ++trial) {
    const double R = u(rng);
    const auto fc = hc_metric_family(R);
    const auto nc = sylvester_nullspace(hc(R));
    const auto ic = unit_instantiations(fc);
    CHECK(span_gap(ic, nc) < 1e-8);
    CHECK(span_gap(nc, ic) < 1e-8);

    const double R7 = 0.8 * u(rng);
    const auto f7 = recurrent_metric_family(h7(R7));
    const auto n7 = sylvester_nullspace(h7(R7));
    const auto i7 = unit_instantiations(f7);
    CHECK(span_gap(i7, n7) < 1e-8);
    CHECK(span_gap(n7, i7) < 1e-8);
  }
}

TEST_CASE("diagonal metrics") {
  const auto dm = diagonal_metric(preset_model("hc", 0.5));
  REQUIRE(dm);
  CHECK(std::abs(dm->m0 / dm->d - 2.0) < 1e-12);  // ∝ (1, 0.5, 0.25)
  CHECK(std::abs(dm->mN / dm->d - 0.5) < 1e-12);
  CHECK(dieudonne_residual(hc(0.5), dm->matrix(5)) <= 1e-12);

  const auto lap = diagonal_metric(local_model(4, 0.0));
  REQUIRE(lap);
  CHECK(std::abs(lap->m0 - 1.0) < 1e-12);
  CHECK(std::abs(lap->mN - 1.0) < 1e-12);

  CHECK_FALSE(diagonal_metric(preset_model("h7", 0.2)).has_value());
  CHECK_FALSE(diagonal_metric(preset_model("hc", 1.5)).has_value());  // m0 would be negative
}

TEST_CASE("small couplings keep the identity-seeded candidate positive") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = oracle::random_model(rng, 3 + trial % 5, 0.05, false);
    const auto fam = recurrent_metric_family(build_endpoint_hamiltonian(m));
    std::vector<double> e1(fam.arity(), 0.0);
    e1[0] = 1.0;
    CHECK(positivity(fam.instantiate(e1)).classification == Definiteness::positive_definite);
  }
}
