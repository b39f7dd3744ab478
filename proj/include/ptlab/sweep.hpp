#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptlab/eigen.hpp"
#include "ptlab/metric.hpp"

namespace ptlab {

/// One-parameter Hamiltonian family H(R).
struct ParameterFamily {
  std::string name;
  std::function<CMatrix(double)> build;
};

/// Family backed by a preset name (see presets.hpp).
ParameterFamily preset_family(const std::string& preset, std::size_t n = 0);

/// steps points from lo to hi inclusive (steps = 1 gives {lo}).
std::vector<double> make_grid(double lo, double hi, std::size_t steps);

struct SweepRecord {
  double parameter = 0.0;
  SpectrumReport spectrum;
  std::optional<double> min_metric_eigenvalue;
  bool failed = false;  ///< the eigensolver threw at this point
  std::string error;
};

/// Spectrum at every grid point, evaluated in parallel and returned in grid order.
std::vector<SweepRecord> spectrum_sweep(const ParameterFamily& family, std::span<const double> grid,
                                        double tol = 1e-8);

/// All-real indicator at one parameter value.
bool spectrum_all_real(const ParameterFamily& family, double parameter, double tol = 1e-8);

/// Bisection on the all-real indicator down to bracket width tol.
/// Throws bracket_invalid when both ends agree.
double kep_locate(const ParameterFamily& family, double lo, double hi, double tol);

/// Closest eigenvalue pair at a parameter value, its mean and the defect analysis there.
struct Coalescence {
  double parameter = 0.0;
  Complex energy;
  double pair_gap = 0.0;
  DefectReport defect;
};
Coalescence coalescence_at(const ParameterFamily& family, double parameter);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_refined = false;  ///< endpoint located by bisection (false: window edge)
  bool hi_refined = false;
};

struct RealityDomain {
  std::vector<Interval> intervals;
};

/// Maximal all-real intervals inside [lo, hi] found on a steps-point grid, with interior
/// endpoints refined by kep_locate to width tol.
RealityDomain reality_domain(const ParameterFamily& family, double lo, double hi, std::size_t steps,
                             double tol = 1e-9);

struct PositivityRecord {
  double parameter = 0.0;
  std::optional<double> min_eigenvalue;  ///< empty when the metric source threw
  Definiteness classification = Definiteness::singular;
  bool skipped = false;
  std::string note;
};

struct PositivityScan {
  std::vector<PositivityRecord> records;
  std::vector<Interval> positive_intervals;  ///< maximal grid runs classified positive definite
};

/// Minimum metric eigenvalue along a grid. Points where the source throws singular_parameter
/// are skipped and flagged.
PositivityScan positivity_domain(const std::function<CMatrix(double)>& metric_source,
                                 std::span<const double> grid, double tol = 1e-10);

/// Recurrent metric family of H_c(R) with free entries t = Θ22, u = Θ01, z = Θ02, q = Θ03,
/// p = Θ04 in that parameter order.
MetricFamily hc_metric_family(double r);
CMatrix hc_metric(double r, double t, double u, double z, double q, double p);

/// Θ(1−R, (1−R)w, 0, 0, 0) for H_c(R).
CMatrix hc_band_metric(double r, double w);

/// Largest w for which Θ(1−R, (1−R)w, 0, 0, 0) stays positive definite on a non-empty interval
/// (R_min(w), 1 − eps), found by bisection over [0, 1] to width tol. The interval is non-empty
/// exactly when the metric is positive definite at R = 1 − eps.
double critical_w(double tol = 1e-6, double eps = 1e-6);

/// Left end of the positivity run of Θ(1−R, (1−R)w, 0,0,0) that reaches R = 1 − eps, scanned on
/// [lo, 1 − eps]; empty when there is no such run.
std::optional<double> positivity_left_end(double w, double lo = -3.0, std::size_t steps = 2000, double eps = 1e-6);

/// P̃(ξ) = base + ξ·P.
struct PseudometricFamily {
  CMatrix base;
  CMatrix parity;
  CMatrix at(double xi) const;
};

/// Base candidate from the recurrent family of H^(7)(R) at x = e_6 (the sixth unit vector).
PseudometricFamily pseudometric_family(double r);

struct PseudometricRecord {
  double xi = 0.0;
  std::vector<double> tau;  ///< ascending eigenvalues of P̃(ξ)
  double min_abs_tau = 0.0;
  bool invertible = false;
};
std::vector<PseudometricRecord> pseudometric_scan(double r, std::span<const double> xi_grid, double tol = 1e-10);

/// Monic det(τI − P̃(ξ)) at R = 0 from the closed factorization
/// (τ+ξ)((τ+ξ)² − 2)(((τ−ξ)² − 2)² − 2), coefficients by ascending power of τ.
std::vector<double> pseudometric_factorized_polynomial(double xi);

/// Eigenvalue branch τ(ξ) = slope·ξ + intercept.
struct LinearBranch {
  double slope;
  double intercept;
};
/// The seven branches at R = 0: −ξ, −ξ ± √2, ξ ± √(2 ± √2).
std::vector<LinearBranch> pseudometric_branches();

/// ξ in [lo, hi] maximizing min_j |τ_j(ξ)|; the optimum sits on a crossing |τ_i| = |τ_j|
/// or at a window end, so every candidate is examined.
double xi_optimize(const std::vector<LinearBranch>& branches, double lo, double hi);

}  // namespace ptlab
