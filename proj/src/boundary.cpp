#include "ptlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "ptlab/eigen.hpp"
#include "ptlab/parallel.hpp"

namespace ptlab {

Complex chebyshev_u(std::size_t k, Complex y) {
  Complex prev = 1.0;
  if (k == 0) return prev;
  Complex cur = 2.0 * y;
  for (std::size_t j = 1; j < k; ++j) {
    const Complex next = 2.0 * y * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> chebyshev_nodes(std::size_t m) {
  std::vector<double> y(m + 1);
  const double step = std::numbers::pi / static_cast<double>(m + 2);
  for (std::size_t j = 0; j <= m; ++j) y[j] = std::cos(static_cast<double>(j + 1) * step);
  if (m % 2 == 0) y[m / 2] = 0.0;  // the middle node is exactly zero; cos(pi/2) is not
  return y;
}

LaplacianEigenbasis laplacian_eigenbasis(std::size_t m) {
  LaplacianEigenbasis e;
  e.dim = m + 1;
  e.nodes = chebyshev_nodes(m);
  e.deltas.resize(e.dim);
  e.basis = CMatrix(e.dim, e.dim);
  for (std::size_t j = 0; j < e.dim; ++j) {
    const double y = e.nodes[j];
    e.deltas[j] = 2.0 * (1.0 - y);
    double norm = 0.0;
    std::vector<double> col(e.dim);
    for (std::size_t i = 0; i < e.dim; ++i) {
      col[i] = chebyshev_u(i, y).real();
      norm += col[i] * col[i];
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < e.dim; ++i) e.basis(i, j) = col[i] / norm;
  }
  return e;
}

namespace {

/// Everything about one model that does not depend on E.
struct Reduction {
  CMatrix h;
  LaplacianEigenbasis bulk;
  CVector col0, colN, row0, rowN;  // inner parts (length n−1)
  std::size_t n;

  explicit Reduction(const EndpointModel& model) : n(model.n) {
    model.validate();
    h = build_endpoint_hamiltonian(model);
    bulk = laplacian_eigenbasis(n - 2);
    for (std::size_t i = 1; i < n; ++i) {
      col0.push_back(h(i, 0));
      colN.push_back(h(i, n));
      row0.push_back(h(0, i));
      rowN.push_back(h(n, i));
    }
  }

  /// Nearest bulk eigenvalue and its distance from E.
  std::pair<double, double> nearest_pole(Complex e) const {
    double best = bulk.deltas[0], dist = std::abs(e - bulk.deltas[0]);
    for (double d : bulk.deltas)
      if (std::abs(e - d) < dist) {
        dist = std::abs(e - d);
        best = d;
      }
    return {best, dist};
  }

  CMatrix resolvent(Complex e) const {
    const auto [pole, dist] = nearest_pole(e);
    if (dist <= 1e-10)
      throw ResolventPole(pole, "energy lies on the bulk eigenvalue " + std::to_string(pole));
    const std::size_t m = bulk.dim;
    CVector w(m);
    for (std::size_t k = 0; k < m; ++k) w[k] = 1.0 / (e - bulk.deltas[k]);
    CMatrix s(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += bulk.basis(i, k) * w[k] * bulk.basis(j, k);
        s(i, j) = acc;
        s(j, i) = acc;
      }
    return s;
  }

  static Complex dot(const CVector& r, const CVector& c) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) acc += r[k] * c[k];
    return acc;
  }

  CMatrix secular(Complex e, const CMatrix& sigma, CVector* amp_minus = nullptr, CVector* amp_plus = nullptr) const {
    CVector a = sigma * std::span<const Complex>(col0);
    CVector b = sigma * std::span<const Complex>(colN);
    CMatrix s(2, 2);
    s(0, 0) = h(0, 0) - e + dot(row0, a);
    s(0, 1) = h(0, n) + dot(row0, b);
    s(1, 0) = h(n, 0) + dot(rowN, a);
    s(1, 1) = h(n, n) - e + dot(rowN, b);
    if (amp_minus) *amp_minus = std::move(a);
    if (amp_plus) *amp_plus = std::move(b);
    return s;
  }

  /// det S(E)·Π_k(E − δ_k), which equals det(E − H) and has no poles.
  Complex cleared(Complex e) const {
    // at a bulk pole the cleared determinant is still det(E − H); evaluate it directly there
    if (nearest_pole(e).second <= 1e-10) return determinant(e * CMatrix::identity(h.rows()) - h);
    const CMatrix s = secular(e, resolvent(e));
    Complex det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    for (double d : bulk.deltas) det *= (e - d);
    return det;
  }
};

double cleared_real(const Reduction& red, double e) { return red.cleared(e).real(); }

std::optional<BoundState> assemble(const Reduction& red, double energy) {
  const CMatrix sigma = red.resolvent(energy);
  CVector a, b;
  const CMatrix s = red.secular(energy, sigma, &a, &b);
  // null vector of the 2×2 system from its dominant row
  const double n0 = std::hypot(std::abs(s(0, 0)), std::abs(s(0, 1)));
  const double n1 = std::hypot(std::abs(s(1, 0)), std::abs(s(1, 1)));
  Complex xm, xp;
  if (std::max(n0, n1) == 0.0) {
    xm = 1.0;
    xp = 0.0;
  } else if (n0 >= n1) {
    xm = s(0, 1);
    xp = -s(0, 0);
  } else {
    xm = s(1, 1);
    xp = -s(1, 0);
  }
  BoundState st;
  st.energy = energy;
  st.inner.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) st.inner[k] = a[k] * xm + b[k] * xp;
  st.full.push_back(xm);
  st.full.insert(st.full.end(), st.inner.begin(), st.inner.end());
  st.full.push_back(xp);
  const double nrm = norm2(st.full);
  if (nrm == 0.0) return std::nullopt;
  for (auto& v : st.full) v /= nrm;
  for (auto& v : st.inner) v /= nrm;
  st.x_minus = st.full.front();
  st.x_plus = st.full.back();
  CVector hv = red.h * std::span<const Complex>(st.full);
  double res = 0.0;
  for (std::size_t k = 0; k < hv.size(); ++k) res += std::norm(hv[k] - st.energy * st.full[k]);
  st.residual = std::sqrt(res) / std::max(1.0, frobenius_norm(red.h));
  return st;
}

/// Bisection to the resolution of double precision. fa, fb must have opposite signs.
double bisect(const Reduction& red, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = cleared_real(red, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Golden-section minimum of |g| on [lo, hi].
double golden_min(const Reduction& red, double lo, double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
  auto f = [&](double e) { return std::abs(red.cleared(e)); };
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CMatrix inner_resolvent(Complex energy, const EndpointModel& model) {
  return Reduction(model).resolvent(energy);
}

CMatrix secular_matrix(Complex energy, const EndpointModel& model) {
  const Reduction red(model);
  return red.secular(energy, red.resolvent(energy));
}

Complex secular_determinant(Complex energy, const EndpointModel& model) {
  const CMatrix s = secular_matrix(energy, model);
  return s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
}

Complex secular_determinant_derivative(Complex energy, const EndpointModel& model) {
  const Reduction red(model);
  const CMatrix sigma = red.resolvent(energy);
  const CMatrix s = red.secular(energy, sigma);
  const CMatrix s2 = sigma * sigma;
  // dS/dE = −I − R Σ² C
  CMatrix ds = red.secular(energy, s2);
  ds(0, 0) -= red.h(0, 0) - energy;
  ds(0, 1) -= red.h(0, red.n);
  ds(1, 0) -= red.h(red.n, 0);
  ds(1, 1) -= red.h(red.n, red.n) - energy;
  for (auto& v : ds.data()) v = -v;
  ds(0, 0) -= 1.0;
  ds(1, 1) -= 1.0;
  return ds(0, 0) * s(1, 1) + s(0, 0) * ds(1, 1) - ds(0, 1) * s(1, 0) - s(0, 1) * ds(1, 0);
}

BoundStateScan bound_states(const EndpointModel& model, const EnergyGrid& grid, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");
  if (grid.steps < 2 || !(grid.hi > grid.lo)) throw Error(ErrorKind::invalid_parameter, "energy grid needs lo < hi and at least two steps");
  const Reduction red(model);
  BoundStateScan scan;

  const std::size_t count = grid.steps;
  std::vector<double> es(count), gs(count);
  std::vector<char> valid(count, 1);
  const double h = (grid.hi - grid.lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) es[k] = grid.lo + h * static_cast<double>(k);
  parallel_for(count, [&](std::size_t k) {
    if (red.nearest_pole(es[k]).second <= 1e-8) {
      valid[k] = 0;
      return;
    }
    gs[k] = cleared_real(red, es[k]);
  });
  for (std::size_t k = 0; k < count; ++k)
    if (!valid[k]) scan.skipped_poles.push_back(red.nearest_pole(es[k]).first);

  std::vector<double> roots;
  // exact zeros and sign changes between neighbouring valid points
  std::size_t prev = count;
  for (std::size_t k = 0; k < count; ++k) {
    if (!valid[k]) continue;
    if (gs[k] == 0.0) roots.push_back(es[k]);
    if (prev != count && gs[prev] != 0.0 && gs[k] != 0.0 && (gs[prev] < 0) != (gs[k] < 0))
      roots.push_back(bisect(red, es[prev], es[k], gs[prev]));
    prev = k;
  }
  // local minima of |g| hide root pairs (or a double root) inside one cell pair
  for (std::size_t k = 1; k + 1 < count; ++k) {
    if (!valid[k - 1] || !valid[k] || !valid[k + 1]) continue;
    const double a0 = std::abs(gs[k - 1]), a1 = std::abs(gs[k]), a2 = std::abs(gs[k + 1]);
    if (!(a1 < a0 && a1 < a2)) continue;
    if ((gs[k - 1] < 0) != (gs[k] < 0) || (gs[k] < 0) != (gs[k + 1] < 0)) continue;
    const double em = golden_min(red, es[k - 1], es[k + 1]);
    const double gm = cleared_real(red, em);
    if ((gm < 0) != (gs[k] < 0)) {
      roots.push_back(bisect(red, es[k - 1], em, gs[k - 1]));
      roots.push_back(bisect(red, em, es[k + 1], gm));
    } else {
      roots.push_back(em);  // tangential touch; kept only if the state residual is small
    }
  }

  std::sort(roots.begin(), roots.end());
  for (double e : roots) {
    const auto [pole, dist] = red.nearest_pole(e);
    if (dist <= 1e-8) {
      scan.skipped_poles.push_back(pole);
      continue;
    }
    if (!scan.states.empty() && std::abs(scan.states.back().energy.real() - e) <= tol) continue;
    auto st = assemble(red, e);
    if (st && st->residual <= 1e-8) scan.states.push_back(std::move(*st));
  }
  std::sort(scan.skipped_poles.begin(), scan.skipped_poles.end());
  scan.skipped_poles.erase(std::unique(scan.skipped_poles.begin(), scan.skipped_poles.end()), scan.skipped_poles.end());
  return scan;
}

EnergyGrid default_energy_window(const EndpointModel& model, std::size_t steps) {
  const CMatrix h = build_endpoint_hamiltonian(model);
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (j != i) r += std::abs(h(i, j));
    const double c = h(i, i).real();
    lo = i == 0 ? c - r : std::min(lo, c - r);
    hi = i == 0 ? c + r : std::max(hi, c + r);
  }
  const double pad = 1e-3 * (hi - lo) + 1e-6;
  return {lo - pad, hi + pad, steps};
}

CMatrix triangular_u(Complex tau, std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::invalid_dimension, "triangular_u needs dim >= 1");
  CMatrix u(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Complex p = 1.0;
    for (std::size_t j = i; j < dim; ++j) {
      u(i, j) = p;
      p *= tau;
    }
  }
  return u;
}

Complex t_from_energy(Complex energy) {
  const Complex y = (2.0 - energy) / 2.0;
  const Complex root = std::sqrt(y * y - 1.0);
  const Complex t = y + root;
  return std::abs(t) >= 1.0 ? t : y - root;
}

}  // namespace ptlab
