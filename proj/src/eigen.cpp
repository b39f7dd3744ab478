#include "ptlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ptlab/polynomial.hpp"
#include "ptlab/rational.hpp"

namespace ptlab {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (!m.square() || m.rows() == 0)
    throw Error(ErrorKind::invalid_dimension, std::string(what) + " needs a non-empty square matrix");
}

// Diagonal similarity by powers of two so row and column norms are comparable.
CMatrix balance(CMatrix a) {
  const std::size_t n = a.rows();
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
  return a;
}

CMatrix hessenberg(CMatrix a) {
  const std::size_t n = a.rows();
  if (n < 3) return a;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    CVector v(len);
    double alpha = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = a(k + 1 + i, k);
      alpha += std::norm(v[i]);
    }
    alpha = std::sqrt(alpha);
    double tail = 0.0;
    for (std::size_t i = 1; i < len; ++i) tail += std::norm(v[i]);
    if (tail == 0.0) continue;
    const Complex phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : Complex(1.0);
    v[0] += phase * alpha;
    double vnorm = 0.0;
    for (const auto& x : v) vnorm += std::norm(x);
    const double beta = 2.0 / vnorm;
    for (std::size_t j = k; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * a(k + 1 + i, j);
      s *= beta;
      for (std::size_t i = 0; i < len; ++i) a(k + 1 + i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < len; ++j) s += a(i, k + 1 + j) * v[j];
      s *= beta;
      for (std::size_t j = 0; j < len; ++j) a(i, k + 1 + j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
  return a;
}

Complex wilkinson_shift(const CMatrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex m1 = mid + disc, m2 = mid - disc;
  return std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
}

void sort_spectrum(CVector& v) {
  std::sort(v.begin(), v.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

}  // namespace

double default_realness_tolerance(Complex lambda) { return 1e-8 * (1.0 + std::abs(lambda)); }

CVector qr_eigenvalues(const CMatrix& m, const EigenOptions& options) {
  require_square(m, "eigenvalue solver");
  require_finite(m, "eigenvalue input");
  const std::size_t n = m.rows();
  if (n == 1) return {m(0, 0)};
  CMatrix h = hessenberg(balance(m));
  const double scale = std::max(frobenius_norm(h), std::numeric_limits<double>::min());
  CVector eig(n);
  std::size_t total = 0;
  std::size_t since_deflation = 0;
  const std::size_t cap = options.iterations_per_dim * n;
  std::vector<Complex> cs(n), sn(n);

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (s == 0.0) s = scale;
      if (std::abs(h(lo, lo - 1)) <= options.deflation * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (total >= cap) {
      std::ostringstream msg;
      msg << "QR iteration did not converge after " << total << " sweeps (dimension " << n
          << ", active block " << lo << ".." << hi << ", subdiagonal " << std::abs(h(hi, hi - 1)) << ")";
      throw NumericalFailure(msg.str(), total);
    }
    ++total;
    ++since_deflation;
    const auto uhi = static_cast<std::size_t>(hi);
    const auto ulo = static_cast<std::size_t>(lo);
    Complex mu;
    if (since_deflation % 11 == 10) {
      mu = h(uhi, uhi) + std::abs(h(uhi, uhi - 1)) * Complex(0.75, 0.4375);
    } else {
      mu = wilkinson_shift(h, uhi);
    }
    for (std::size_t i = ulo; i <= uhi; ++i) h(i, i) -= mu;
    for (std::size_t j = ulo; j < uhi; ++j) {
      const Complex x = h(j, j), y = h(j + 1, j);
      const double r = std::hypot(std::abs(x), std::abs(y));
      Complex c = 1.0, s = 0.0;
      if (r > 0.0) {
        c = x / r;
        s = y / r;
      }
      cs[j] = c;
      sn[j] = s;
      for (std::size_t k = j; k <= uhi; ++k) {
        const Complex a = h(j, k), b = h(j + 1, k);
        h(j, k) = std::conj(c) * a + std::conj(s) * b;
        h(j + 1, k) = -s * a + c * b;
      }
    }
    for (std::size_t j = ulo; j < uhi; ++j) {
      const Complex c = cs[j], s = sn[j];
      for (std::size_t i = ulo; i <= std::min(j + 1, uhi); ++i) {
        const Complex a = h(i, j), b = h(i, j + 1);
        h(i, j) = a * c + b * s;
        h(i, j + 1) = -a * std::conj(s) + b * std::conj(c);
      }
    }
    for (std::size_t i = ulo; i <= uhi; ++i) h(i, i) += mu;
  }
  return eig;
}

SpectrumReport eigenvalues(const CMatrix& m, double tol, const EigenOptions& options) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_parameter, "realness tolerance must be positive");
  SpectrumReport report;
  report.eigenvalues = qr_eigenvalues(m, options);
  sort_spectrum(report.eigenvalues);
  const std::size_t n = report.eigenvalues.size();
  report.real.assign(n, false);
  std::size_t flagged = 0;
  bool ambiguous = false;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex e = report.eigenvalues[k];
    const double bound = 1.0 + std::abs(e);
    if (std::abs(e.imag()) <= tol * bound) {
      report.real[k] = true;
      ++flagged;
    } else if (std::abs(e.imag()) <= 1e-5 * bound) {
      ambiguous = true;
    }
  }
  if (ambiguous) {
    // near a coalescence the QR split of a real pair is O(sqrt(eps)); settle it exactly
    if (const auto exact = exact_real(m)) {
      const int real_roots = qpoly::real_root_count(characteristic_polynomial_exact(*exact));
      if (static_cast<std::size_t>(real_roots) > flagged) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          return std::abs(report.eigenvalues[a].imag()) < std::abs(report.eigenvalues[b].imag());
        });
        std::size_t need = static_cast<std::size_t>(real_roots) - flagged;
        for (std::size_t idx : order) {
          if (need == 0) break;
          if (!report.real[idx]) {
            report.real[idx] = true;
            --need;
          }
        }
        flagged = static_cast<std::size_t>(real_roots);
      }
    }
  }
  report.all_real = flagged == n;
  report.complex_pair_count = (n - flagged) / 2;
  return report;
}

SvdResult svd(const CMatrix& a) {
  const std::size_t n = a.cols();
  const std::size_t m = std::max(a.rows(), n);
  CMatrix u(m, n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) = a(i, j);
  CMatrix v = CMatrix::identity(n);
  constexpr double eps = 1e-15;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(u(i, p));
          beta += std::norm(u(i, q));
          gamma += std::conj(u(i, p)) * u(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex up = u(i, p), uq = u(i, q) * phase;
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = v(i, p), vq = v(i, q) * phase;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(u(i, j));
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
  SvdResult out;
  out.singular_values.resize(n);
  out.v = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.singular_values[k] = sigma[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, order[k]);
  }
  return out;
}

CMatrix null_space(const CMatrix& a, double threshold) {
  const SvdResult s = svd(a);
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < s.singular_values.size(); ++k)
    if (s.singular_values[k] <= threshold) cols.push_back(k);
  CMatrix basis(a.cols(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < a.cols(); ++i) basis(i, c) = s.v(i, cols[c]);
  return basis;
}

namespace {
// Fix the phase so the largest component is real and positive.
void normalize_phase(CVector& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12)) best = i;
  const double nrm = norm2(v);
  if (nrm == 0.0 || std::abs(v[best]) == 0.0) return;
  const Complex phase = std::conj(v[best]) / std::abs(v[best]);
  for (auto& x : v) x *= phase / nrm;
}
}  // namespace

EigenDecomposition eigenpairs(const CMatrix& m, const EigenOptions& options) {
  CVector values = qr_eigenvalues(m, options);
  sort_spectrum(values);
  const std::size_t n = values.size();
  const double scale = std::max(1.0, frobenius_norm(m));

  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::ptrdiff_t> owner(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < clusters.size() && owner[k] < 0; ++c)
      for (std::size_t j : clusters[c])
        if (std::abs(values[j] - values[k]) <= options.cluster_tolerance) {
          owner[k] = static_cast<std::ptrdiff_t>(c);
          clusters[c].push_back(k);
          break;
        }
    if (owner[k] < 0) {
      owner[k] = static_cast<std::ptrdiff_t>(clusters.size());
      clusters.push_back({k});
    }
  }

  EigenDecomposition out;
  for (const auto& cluster : clusters) {
    Complex center = 0.0;
    for (std::size_t j : cluster) center += values[j];
    center /= static_cast<double>(cluster.size());
    CMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= center;
    const SvdResult s = svd(shifted);
    const double threshold = options.cluster_tolerance * scale;
    std::size_t g = 0;
    for (std::size_t k = n; k-- > 0;) {
      if (s.singular_values[k] <= threshold) ++g;
      else break;
    }
    g = std::clamp<std::size_t>(g, 1, cluster.size());
    for (std::size_t k = 0; k < g; ++k) {
      CVector vec(n);
      for (std::size_t i = 0; i < n; ++i) vec[i] = s.v(i, n - 1 - k);
      normalize_phase(vec);
      out.pairs.push_back({cluster.size() == 1 ? values[cluster[0]] : values[cluster[k]], std::move(vec)});
    }
    if (g < cluster.size()) out.deficient.push_back({center, cluster.size(), g});
  }
  return out;
}

CVector characteristic_polynomial(const CMatrix& m) {
  require_square(m, "characteristic polynomial");
  require_finite(m, "characteristic polynomial input");
  if (const auto exact = exact_real(m)) {
    const QPoly q = characteristic_polynomial_exact(*exact);
    CVector out(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) out[k] = to_double(q[k]);
    return out;
  }
  const CMatrix h = hessenberg(m);
  const std::size_t n = h.rows();
  std::vector<CVector> p(n + 1);
  p[0] = {Complex(1.0)};
  for (std::size_t k = 1; k <= n; ++k) {
    const CVector lin{-h(k - 1, k - 1), Complex(1.0)};
    CVector next = poly::multiply(lin, p[k - 1]);
    Complex chain = 1.0;
    for (std::size_t i = 1; i < k; ++i) {
      chain *= h(k - i, k - i - 1);
      const Complex coef = h(k - 1 - i, k - 1) * chain;
      for (std::size_t t = 0; t < p[k - 1 - i].size(); ++t) next[t] -= coef * p[k - 1 - i][t];
    }
    p[k] = std::move(next);
  }
  return p[n];
}

DefectReport defectiveness_at(const CMatrix& m, Complex lambda, double tol) {
  require_square(m, "defectiveness test");
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");
  DefectReport r;
  r.eigenvalue = lambda;
  if (const auto exact = exact_real(m)) {
    // square-free factorization P = Π f_k^k (Yun); every f_k has simple roots only
    QPoly p = characteristic_polynomial_exact(*exact);
    QPoly g = qpoly::gcd(p, qpoly::derivative(p));
    QPoly c = qpoly::divide(p, g).first;
    QPoly d = qpoly::divide(qpoly::derivative(p), g).first;
    d = qpoly::subtract(d, qpoly::derivative(c));
    for (std::size_t k = 1; qpoly::degree(c) > 0; ++k) {
      const QPoly a = qpoly::gcd(c, d);
      if (qpoly::degree(a) > 0) {
        CVector ac(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) ac[i] = to_double(a[i]);
        for (const auto& z : poly::roots(ac))
          if (std::abs(z - lambda) <= tol) r.algebraic_multiplicity += k;
      }
      c = qpoly::divide(c, a).first;
      d = qpoly::subtract(qpoly::divide(d, a).first, qpoly::derivative(c));
    }
  } else {
    // A k-fold root comes back from floating-point root finding as a cluster. Its centre is the
    // simple root of p^(k-1); polish it there and require p, p', …, p^(k-1) to vanish at it.
    const CVector p = characteristic_polynomial(m);
    const CVector roots = poly::roots(p);
    for (const auto& z : roots)
      if (std::abs(z - lambda) <= tol) ++r.algebraic_multiplicity;
    std::vector<CVector> derivs{p};
    for (std::size_t k = 1; k < p.size(); ++k) derivs.push_back(poly::derivative(derivs.back()));
    auto vanishes = [](const CVector& q, Complex x) {
      double bound = 0.0, pw = 1.0;
      for (const auto& c : q) {
        bound += std::abs(c) * pw;
        pw *= std::abs(x);
      }
      return std::abs(poly::evaluate(q, x)) <= 1e-9 * std::max(bound, 1e-300);
    };
    CVector near = roots;
    std::sort(near.begin(), near.end(),
              [&](Complex a, Complex b) { return std::abs(a - lambda) < std::abs(b - lambda); });
    Complex sum = 0.0;
    for (std::size_t k = 1; k <= near.size(); ++k) {
      sum += near[k - 1];
      Complex centre = sum / static_cast<double>(k);
      for (int it = 0; it < 20; ++it) {
        const Complex f = poly::evaluate(derivs[k - 1], centre), df = poly::evaluate(derivs[k], centre);
        if (df == 0.0) break;
        const Complex step = f / df;
        centre -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(centre))) break;
      }
      if (std::abs(centre - lambda) > tol) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = vanishes(derivs[j], centre);
      if (ok) r.algebraic_multiplicity = std::max(r.algebraic_multiplicity, k);
    }
  }
  if (r.algebraic_multiplicity == 0) {
    std::ostringstream msg;
    msg << "no eigenvalue within " << tol << " of " << lambda;
    throw Error(ErrorKind::not_an_eigenvalue, msg.str());
  }
  CMatrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
  const SvdResult s = svd(shifted);
  const double threshold = tol * std::max(1.0, frobenius_norm(m));
  std::size_t g = 0;
  for (double sv : s.singular_values)
    if (sv <= threshold) ++g;
  r.geometric_multiplicity = std::clamp<std::size_t>(g, 1, r.algebraic_multiplicity);
  return r;
}

HermitianEigen hermitian_eigen(const CMatrix& m_in) {
  require_square(m_in, "Hermitian eigensolver");
  const std::size_t n = m_in.rows();
  CMatrix a = m_in;
  // symmetrize against round-off
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  CMatrix v = CMatrix::identity(n);
  const double total = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-16 * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        const Complex ph = a(p, q) / g;  // e^{iφ}
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Complex jqp = -s * std::conj(ph);
        const Complex jqq = c * std::conj(ph);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * s + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * s + vkq * jqq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace {
// In-place LU with partial pivoting; returns permutation parity or 0 when singular.
int lu_decompose(CMatrix& a, std::vector<std::size_t>& perm) {
  const std::size_t n = a.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  int parity = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == Complex(0.0)) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
      parity = -parity;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return parity;
}
}  // namespace

Complex determinant(CMatrix m) {
  require_square(m, "determinant");
  std::vector<std::size_t> perm;
  const int parity = lu_decompose(m, perm);
  if (parity == 0) return 0.0;
  Complex d = static_cast<double>(parity);
  for (std::size_t i = 0; i < m.rows(); ++i) d *= m(i, i);
  return d;
}

CVector solve(CMatrix m, CVector b) {
  require_square(m, "linear solve");
  if (b.size() != m.rows()) throw Error(ErrorKind::invalid_dimension, "right-hand side length mismatch");
  std::vector<std::size_t> perm;
  if (lu_decompose(m, perm) == 0) throw Error(ErrorKind::singular_parameter, "singular linear system");
  const std::size_t n = m.rows();
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= m(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= m(i, j) * x[j];
    x[i] /= m(i, i);
  }
  return x;
}

CMatrix inverse(const CMatrix& m) {
  const std::size_t n = m.rows();
  CMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    CVector e(n, Complex(0.0));
    e[c] = 1.0;
    const CVector col = solve(m, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return inv;
}

}  // namespace ptlab
