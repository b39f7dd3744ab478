#include "ptlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ptlab::poly {

Complex evaluate(std::span<const Complex> p, Complex x) {
  Complex acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

CVector derivative(std::span<const Complex> p) {
  if (p.size() <= 1) return {Complex(0.0)};
  CVector d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<double>(k);
  return d;
}

CVector multiply(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return {};
  CVector c(a.size() + b.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

CVector taylor_shift(std::span<const Complex> p, Complex shift) {
  CVector out(p.begin(), p.end());
  const std::size_t n = out.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k-- > i;) out[k] += shift * out[k + 1];
  return out;
}

CVector from_roots(std::span<const Complex> roots) {
  CVector p{Complex(1.0)};
  for (const auto& r : roots) {
    const CVector factor{-r, Complex(1.0)};
    p = multiply(p, factor);
  }
  return p;
}

CVector roots(std::span<const Complex> p_in, int max_iterations) {
  CVector p(p_in.begin(), p_in.end());
  while (!p.empty() && p.back() == Complex(0.0)) p.pop_back();
  if (p.size() <= 1) return {};
  const std::size_t n = p.size() - 1;
  const Complex lead = p.back();
  for (auto& c : p) c /= lead;

  // zero roots are split off exactly
  std::size_t zeros = 0;
  while (zeros < n && p[zeros] == Complex(0.0)) ++zeros;
  CVector q(p.begin() + static_cast<std::ptrdiff_t>(zeros), p.end());
  const std::size_t m = q.size() - 1;

  CVector z(m);
  if (m > 0) {
    double bound = 0.0;
    for (std::size_t k = 0; k < m; ++k) bound = std::max(bound, std::abs(q[k]));
    const double radius = 0.5 * (1.0 + bound);
    const double lower = std::pow(std::abs(q[0]), 1.0 / static_cast<double>(m));
    const double r0 = std::clamp(lower, 1e-3, radius);
    for (std::size_t k = 0; k < m; ++k) {
      const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(m) + 0.4;
      z[k] = std::polar(r0, angle);
    }
    const CVector dq = derivative(q);
    for (int it = 0; it < max_iterations; ++it) {
      double worst = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const Complex f = evaluate(q, z[k]);
        if (f == Complex(0.0)) continue;
        const Complex ratio = f / evaluate(dq, z[k]);
        Complex repulsion = 0.0;
        for (std::size_t j = 0; j < m; ++j)
          if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
        Complex step = ratio / (1.0 - ratio * repulsion);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
        z[k] -= step;
        worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
      }
      if (worst < 1e-16) break;
    }
  }
  z.insert(z.end(), zeros, Complex(0.0));
  return z;
}

double max_coefficient_difference(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t n = std::max(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = k < a.size() ? a[k] : Complex(0.0);
    const Complex y = k < b.size() ? b[k] : Complex(0.0);
    worst = std::max(worst, std::abs(x - y));
  }
  return worst;
}

}  // namespace ptlab::poly
