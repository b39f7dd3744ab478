#include "ptlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptlab/parallel.hpp"
#include "ptlab/polynomial.hpp"
#include "ptlab/presets.hpp"

namespace ptlab {

ParameterFamily preset_family(const std::string& preset, std::size_t n) {
  preset_model(preset, 0.0, n);  // fail early on unknown names or sizes
  return {preset, [preset, n](double r) { return build_endpoint_hamiltonian(preset_model(preset, r, n)); }};
}

std::vector<double> make_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw Error(ErrorKind::invalid_parameter, "grid needs at least one point");
  if (steps == 1) return {lo};
  if (!(hi > lo)) throw Error(ErrorKind::invalid_parameter, "grid needs lo < hi");
  std::vector<double> g(steps);
  const double h = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) g[k] = lo + h * static_cast<double>(k);
  g.back() = hi;
  return g;
}

std::vector<SweepRecord> spectrum_sweep(const ParameterFamily& family, std::span<const double> grid, double tol) {
  if (grid.empty()) throw Error(ErrorKind::invalid_parameter, "empty parameter grid");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw Error(ErrorKind::invalid_parameter, "grid must be strictly increasing");
  std::vector<SweepRecord> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    out[k].parameter = grid[k];
    try {
      out[k].spectrum = eigenvalues(family.build(grid[k]), tol);
    } catch (const Error& e) {
      out[k].failed = true;
      out[k].error = e.what();
    }
  });
  return out;
}

bool spectrum_all_real(const ParameterFamily& family, double parameter, double tol) {
  return eigenvalues(family.build(parameter), tol).all_real;
}

double kep_locate(const ParameterFamily& family, double lo, double hi, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");
  if (!(hi > lo)) throw Error(ErrorKind::bracket_invalid, "bracket needs lo < hi");
  const bool at_lo = spectrum_all_real(family, lo);
  const bool at_hi = spectrum_all_real(family, hi);
  if (at_lo == at_hi)
    throw Error(ErrorKind::bracket_invalid, std::string("spectrum is ") + (at_lo ? "real" : "complex") +
                                                " at both bracket ends");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (spectrum_all_real(family, mid) == at_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Coalescence coalescence_at(const ParameterFamily& family, double parameter) {
  const CMatrix h = family.build(parameter);
  const auto spec = eigenvalues(h);
  const auto& ev = spec.eigenvalues;
  if (ev.size() < 2) throw Error(ErrorKind::invalid_dimension, "coalescence needs at least two eigenvalues");
  Coalescence c;
  c.parameter = parameter;
  c.pair_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      if (std::abs(ev[i] - ev[j]) < c.pair_gap) {
        c.pair_gap = std::abs(ev[i] - ev[j]);
        c.energy = 0.5 * (ev[i] + ev[j]);
      }
  if (std::abs(c.energy.imag()) <= 1e-8 * (1.0 + std::abs(c.energy))) c.energy = c.energy.real();
  c.defect = defectiveness_at(h, c.energy, std::max(1e-6, 4.0 * c.pair_gap));
  return c;
}

RealityDomain reality_domain(const ParameterFamily& family, double lo, double hi, std::size_t steps, double tol) {
  const auto grid = make_grid(lo, hi, std::max<std::size_t>(steps, 2));
  const auto records = spectrum_sweep(family, grid);
  RealityDomain dom;
  std::size_t k = 0;
  while (k < records.size()) {
    if (records[k].failed || !records[k].spectrum.all_real) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end + 1 < records.size() && !records[end + 1].failed && records[end + 1].spectrum.all_real) ++end;
    Interval iv{grid[k], grid[end], false, false};
    if (k > 0 && !records[k - 1].failed) {
      iv.lo = kep_locate(family, grid[k - 1], grid[k], tol);
      iv.lo_refined = true;
    }
    if (end + 1 < records.size() && !records[end + 1].failed) {
      iv.hi = kep_locate(family, grid[end], grid[end + 1], tol);
      iv.hi_refined = true;
    }
    dom.intervals.push_back(iv);
    k = end + 1;
  }
  return dom;
}

PositivityScan positivity_domain(const std::function<CMatrix(double)>& metric_source, std::span<const double> grid,
                                 double tol) {
  PositivityScan scan;
  scan.records.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    auto& rec = scan.records[k];
    rec.parameter = grid[k];
    try {
      const auto p = positivity(metric_source(grid[k]), tol);
      rec.min_eigenvalue = p.min_eigenvalue;
      rec.classification = p.classification;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::singular_parameter) throw;
      rec.skipped = true;
      rec.note = e.what();
    }
  });
  std::size_t k = 0;
  while (k < grid.size()) {
    if (scan.records[k].classification != Definiteness::positive_definite || scan.records[k].skipped) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end + 1 < grid.size() && !scan.records[end + 1].skipped &&
           scan.records[end + 1].classification == Definiteness::positive_definite)
      ++end;
    scan.positive_intervals.push_back({grid[k], grid[end], false, false});
    k = end + 1;
  }
  return scan;
}

MetricFamily hc_metric_family(double r) {
  const CMatrix h = build_endpoint_hamiltonian(preset_model("hc", r));
  return recurrent_metric_family(h, {{2, 2, "t"}, {0, 1, "u"}, {0, 2, "z"}, {0, 3, "q"}, {0, 4, "p"}});
}

CMatrix hc_metric(double r, double t, double u, double z, double q, double p) {
  const double x[] = {t, u, z, q, p};
  return hc_metric_family(r).instantiate(x);
}

CMatrix hc_band_metric(double r, double w) { return hc_metric(r, 1.0 - r, (1.0 - r) * w, 0.0, 0.0, 0.0); }

namespace {
bool band_positive(double r, double w) {
  return positivity(hc_band_metric(r, w), 0.0).classification == Definiteness::positive_definite;
}
}  // namespace

double critical_w(double tol, double eps) {
  double lo = 0.0, hi = 1.0;
  const double r = 1.0 - eps;
  if (!band_positive(r, lo) || band_positive(r, hi))
    throw Error(ErrorKind::bracket_invalid, "positivity must hold at w = 0 and fail at w = 1");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (band_positive(r, mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> positivity_left_end(double w, double lo, std::size_t steps, double eps) {
  const auto grid = make_grid(lo, 1.0 - eps, steps);
  std::optional<double> left;
  for (std::size_t k = grid.size(); k-- > 0;) {
    if (!band_positive(grid[k], w)) break;
    left = grid[k];
  }
  return left;
}

CMatrix PseudometricFamily::at(double xi) const {
  CMatrix m = base;
  for (std::size_t k = 0; k < m.data().size(); ++k) m.data()[k] += xi * parity.data()[k];
  return m;
}

PseudometricFamily pseudometric_family(double r) {
  const CMatrix h = build_endpoint_hamiltonian(preset_model("h7", r));
  const auto fam = recurrent_metric_family(h);
  std::vector<double> x(fam.arity(), 0.0);
  x.at(5) = 1.0;
  return {fam.instantiate(x), build_parity(h.rows())};
}

std::vector<PseudometricRecord> pseudometric_scan(double r, std::span<const double> xi_grid, double tol) {
  const auto fam = pseudometric_family(r);
  std::vector<PseudometricRecord> out(xi_grid.size());
  parallel_for(xi_grid.size(), [&](std::size_t k) {
    auto& rec = out[k];
    rec.xi = xi_grid[k];
    rec.tau = hermitian_eigen(fam.at(xi_grid[k])).values;
    rec.min_abs_tau = std::numeric_limits<double>::infinity();
    for (double t : rec.tau) rec.min_abs_tau = std::min(rec.min_abs_tau, std::abs(t));
    rec.invertible = rec.min_abs_tau > tol;
  });
  return out;
}

std::vector<double> pseudometric_factorized_polynomial(double xi) {
  using poly::multiply;
  const CVector lin = {xi, 1.0};                                 // τ + ξ
  const CVector quad = {xi * xi - 2.0, 2.0 * xi, 1.0};           // (τ+ξ)² − 2
  const CVector inner = {xi * xi - 2.0, -2.0 * xi, 1.0};         // (τ−ξ)² − 2
  CVector quart = multiply(inner, inner);
  quart[0] -= 2.0;
  const CVector p = multiply(multiply(lin, quad), quart);
  std::vector<double> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = p[k].real();
  return out;
}

std::vector<LinearBranch> pseudometric_branches() {
  const double s2 = std::sqrt(2.0);
  const double a = std::sqrt(2.0 + s2), b = std::sqrt(2.0 - s2);
  return {{-1.0, 0.0}, {-1.0, s2}, {-1.0, -s2}, {1.0, a}, {1.0, -a}, {1.0, b}, {1.0, -b}};
}

double xi_optimize(const std::vector<LinearBranch>& branches, double lo, double hi) {
  if (branches.empty()) throw Error(ErrorKind::invalid_input, "no eigenvalue branches");
  if (!(hi >= lo)) throw Error(ErrorKind::invalid_parameter, "window needs lo <= hi");
  auto score = [&](double xi) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : branches) m = std::min(m, std::abs(b.slope * xi + b.intercept));
    return m;
  };
  std::vector<double> candidates = {lo, hi};
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& p = branches[i];
    if (p.slope != 0.0) candidates.push_back(-p.intercept / p.slope);
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      const auto& q = branches[j];
      // p(ξ) = ±q(ξ)
      for (double sign : {1.0, -1.0}) {
        const double ds = p.slope - sign * q.slope;
        if (ds != 0.0) candidates.push_back((sign * q.intercept - p.intercept) / ds);
      }
    }
  }
  double best = lo, best_score = -1.0;
  for (double c : candidates) {
    if (c < lo || c > hi) continue;
    const double s = score(c);
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  }
  return best;
}

}  // namespace ptlab
