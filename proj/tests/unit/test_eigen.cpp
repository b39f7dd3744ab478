#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "ptlab/eigen.hpp"
#include "ptlab/polynomial.hpp"
#include "ptlab/presets.hpp"

using namespace ptlab;

namespace {

CMatrix random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (auto& v : m.data()) v = Complex(g(rng), g(rng));
  return m;
}

CMatrix random_real(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (auto& v : m.data()) v = g(rng);
  return m;
}

/// Greedy matching distance between two eigenvalue multisets.
double multiset_distance(CVector a, CVector b) {
  double worst = 0.0;
  for (Complex x : a) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < b.size(); ++k)
      if (std::abs(b[k] - x) < std::abs(b[best] - x)) best = k;
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

}  // namespace

TEST_CASE("kinetic spectra") {
  const auto s2 = eigenvalues(build_kinetic(2));
  CHECK(std::abs(s2.eigenvalues[0] - 1.0) < 1e-14);
  CHECK(std::abs(s2.eigenvalues[1] - 3.0) < 1e-14);
  CHECK(s2.all_real);

  const auto s3 = eigenvalues(build_kinetic(3));
  const double r2 = std::sqrt(2.0);
  const double expect[] = {2 - r2, 2, 2 + r2};
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(s3.eigenvalues[k] - expect[k]) < 1e-13);
    CHECK(std::abs(expect[k] - (2 - 2 * std::cos((k + 1) * std::numbers::pi / 4))) < 1e-15);
  }
  const auto roots = poly::roots(characteristic_polynomial(build_kinetic(3)));
  CHECK(multiset_distance(roots, s3.eigenvalues) < 1e-12);
}

TEST_CASE("H_c(0.5) spectrum solves the factorized secular equation") {
  const double r = 0.5;
  const auto spec = eigenvalues(build_endpoint_hamiltonian(preset_model("hc", r)));
  CHECK(spec.all_real);
  for (Complex e : spec.eigenvalues) {
    const Complex x = e - 2.0;
    const Complex f = (x - 1.0) * (x + 1.0 - r) * (x * x * x - x * x * r - (3.0 - r) * x + 2.0 * r);
    CHECK(std::abs(f) < 1e-12);
  }
}

TEST_CASE("eigenpairs") {
  const auto id = eigenpairs(CMatrix::identity(3));
  CHECK(id.complete());
  REQUIRE(id.pairs.size() == 3);
  CMatrix basis(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(id.pairs[k].value - 1.0) < 1e-14);
    for (std::size_t i = 0; i < 3; ++i) basis(i, k) = id.pairs[k].vector[i];
  }
  CHECK(std::abs(determinant(basis)) > 1 - 1e-12);

  const auto t3 = eigenpairs(build_kinetic(3));
  for (const auto& p : t3.pairs)
    if (std::abs(p.value - 2.0) < 1e-9) {
      const auto& v = p.vector;
      CHECK(std::abs(v[1]) < 1e-12);
      CHECK(std::abs(v[0] + v[2]) < 1e-12);
      CHECK(std::abs(std::abs(v[0]) - std::sqrt(0.5)) < 1e-12);
    }

  const auto jordan = eigenpairs(build_endpoint_hamiltonian(preset_model("hc", 1.0)));
  CHECK_FALSE(jordan.complete());
  REQUIRE(jordan.deficient.size() == 1);
  CHECK(std::abs(jordan.deficient[0].eigenvalue - 3.0) < 1e-6);
  CHECK(jordan.deficient[0].algebraic_multiplicity == 2);
  CHECK(jordan.deficient[0].geometric_multiplicity == 1);
}

TEST_CASE("eigenpair residuals on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 10;
    const CMatrix m = random_complex(rng, n);
    const auto dec = eigenpairs(m);
    CHECK(dec.complete());
    CHECK(dec.pairs.size() == n);
    const double scale = frobenius_norm(m);
    for (const auto& p : dec.pairs) {
      CVector mv = m * std::span<const Complex>(p.vector);
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) res += std::norm(mv[i] - p.value * p.vector[i]);
      CHECK(std::sqrt(res) <= 1e-10 * scale);
      CHECK(std::abs(norm2(p.vector) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("characteristic polynomials") {
  const CVector p2 = characteristic_polynomial(build_kinetic(2));
  CHECK(poly::max_coefficient_difference(p2, CVector{3.0, -4.0, 1.0}) == 0.0);

  for (double r : {-1.0, 0.0, 0.5}) {
    const CVector p = characteristic_polynomial(build_endpoint_hamiltonian(preset_model("rho_a", r)));
    const CVector shifted = poly::taylor_shift(p, 2.0);  // coefficients in x = E − 2
    CHECK(poly::max_coefficient_difference(shifted, CVector{-r, 3.0, 0.0, -4.0, 0.0, 1.0}) < 1e-10);
  }
  for (double r : {-2.0, 0.3, 1.0, 1.7}) {
    const CVector p = poly::taylor_shift(characteristic_polynomial(build_endpoint_hamiltonian(preset_model("hc", r))), 2.0);
    CVector f = poly::multiply(CVector{-1.0, 1.0}, CVector{1.0 - r, 1.0});
    f = poly::multiply(f, CVector{2.0 * r, -(3.0 - r), -r, 1.0});
    CHECK(poly::max_coefficient_difference(p, f) < 1e-10);
  }

  // complex input takes the floating-point route
  std::mt19937_64 rng(5);
  const CMatrix m = random_complex(rng, 6);
  const CVector p = characteristic_polynomial(m);
  CHECK(multiset_distance(poly::roots(p), oracle::eigenvalues(m)) < 1e-8);
}

TEST_CASE("defect analysis") {
  const auto r = defectiveness_at(build_endpoint_hamiltonian(preset_model("hc", 1.0)), 3.0, 1e-6);
  CHECK(r.algebraic_multiplicity == 2);
  CHECK(r.geometric_multiplicity == 1);
  CHECK(r.defective());

  const auto id = defectiveness_at(CMatrix::identity(4), 1.0, 1e-8);
  CHECK(id.algebraic_multiplicity == 4);
  CHECK(id.geometric_multiplicity == 4);

  // complex input goes through floating-point roots, where a 4-fold root splits into a cluster
  const auto ci = defectiveness_at(Complex(1.0, 1.0) * CMatrix::identity(4), Complex(1.0, 1.0), 1e-8);
  CHECK(ci.algebraic_multiplicity == 4);
  CHECK(ci.geometric_multiplicity == 4);

  const CMatrix shift{{0.0, 1.0}, {0.0, 0.0}};
  const auto nil = defectiveness_at(shift, 0.0, 1e-8);
  CHECK(nil.algebraic_multiplicity == 2);
  CHECK(nil.geometric_multiplicity == 1);

  try {
    defectiveness_at(build_kinetic(2), 2.0, 1e-6);
    FAIL("expected not-an-eigenvalue");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_an_eigenvalue);
  }
}

TEST_CASE("oracle agreement on random complex matrices up to dimension 12") {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 1; n <= 12; ++n) {
    const CMatrix m = random_complex(rng, n);
    const auto spec = eigenvalues(m);
    CHECK(spec.eigenvalues.size() == n);
    CHECK(multiset_distance(spec.eigenvalues, poly::roots(characteristic_polynomial(m))) < 1e-8);
    CHECK(multiset_distance(spec.eigenvalues, oracle::eigenvalues(m)) < 1e-9);
  }
}

TEST_CASE("conjugate pairing, trace, determinant and adjoint isospectrality") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const CMatrix real = random_real(rng, n);
    const auto spec = eigenvalues(real);
    CVector conj = spec.eigenvalues;
    for (auto& v : conj) v = std::conj(v);
    CHECK(multiset_distance(spec.eigenvalues, conj) < 1e-10 * std::max(1.0, frobenius_norm(real)));

    const CMatrix m = random_complex(rng, n);
    const auto s = eigenvalues(m);
    Complex sum = 0.0, prod = 1.0, trace = 0.0;
    for (auto v : s.eigenvalues) {
      sum += v;
      prod *= v;
    }
    for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
    CHECK(std::abs(sum - trace) <= 1e-9 * std::max(1.0, std::abs(trace)));
    const Complex det = determinant(m);
    CHECK(std::abs(prod - det) <= 1e-9 * std::max(1.0, std::abs(det)));

    CVector adj = eigenvalues(adjoint(m)).eigenvalues;
    for (auto& v : adj) v = std::conj(v);
    CHECK(multiset_distance(s.eigenvalues, adj) < 1e-9 * std::max(1.0, frobenius_norm(m)));
  }
}

TEST_CASE("realness classification") {
  const CMatrix rot{{0.0, -1.0}, {1.0, 0.0}};
  const auto s = eigenvalues(rot);
  CHECK_FALSE(s.all_real);
  CHECK(s.complex_pair_count == 1);
  // an exact double root stays real even if QR splits it into a tiny complex pair
  const auto jb = eigenvalues(build_endpoint_hamiltonian(preset_model("hc", 1.0)));
  CHECK(jb.all_real);
  // just past the exceptional point of rho_a the pair is complex
  CHECK_FALSE(eigenvalues(build_endpoint_hamiltonian(preset_model("rho_a", 1.0364))).all_real);
  CHECK(eigenvalues(build_endpoint_hamiltonian(preset_model("rho_a", 1.0363))).all_real);
}

TEST_CASE("dense helpers") {
  std::mt19937_64 rng(4);
  const CMatrix m = random_complex(rng, 5);
  const CMatrix inv = inverse(m);
  CHECK(oracle::max_diff(m * inv, CMatrix::identity(5)) < 1e-12);
  CVector b(5);
  for (std::size_t k = 0; k < 5; ++k) b[k] = Complex(double(k), 1.0);
  const CVector x = solve(m, b);
  const CVector mx = m * std::span<const Complex>(x);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(mx[k] - b[k]) < 1e-12);

  const auto sv = svd(m);
  Eigen::JacobiSVD<Eigen::MatrixXcd> ref(oracle::to_eigen(m));
  for (int k = 0; k < 5; ++k) CHECK(std::abs(sv.singular_values[k] - ref.singularValues()[k]) < 1e-12);

  const CMatrix herm = m + adjoint(m);
  const auto he = hermitian_eigen(herm);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sref(oracle::to_eigen(herm));
  for (int k = 0; k < 5; ++k) CHECK(std::abs(he.values[k] - sref.eigenvalues()[k]) < 1e-12);

  CMatrix rank1(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rank1(i, j) = double((i + 1) * (j + 1));
  CHECK(null_space(rank1, 1e-10).cols() == 2);
}
