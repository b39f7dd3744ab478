#include "ptlab/rational.hpp"

#include <cmath>

namespace ptlab {

using boost::multiprecision::cpp_int;

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::invalid_input, "non-finite value has no rational image");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational q{cpp_int(scaled)};
  if (exponent > 0) {
    q *= Rational(cpp_int(1) << exponent);
  } else if (exponent < 0) {
    q /= Rational(cpp_int(1) << -exponent);
  }
  return q;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::optional<QMatrix> exact_real(const CMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    if (m.data()[k].imag() != 0.0) return std::nullopt;
    q.data()[k] = to_rational(m.data()[k].real());
  }
  return q;
}

CMatrix to_complex(const QMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) c.data()[k] = to_double(m.data()[k]);
  return c;
}

QPoly characteristic_polynomial_exact(const QMatrix& a) {
  if (!a.square() || a.rows() == 0) throw Error(ErrorKind::invalid_dimension, "characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  QPoly c(n + 1);
  c[n] = 1;
  QMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) trace += a(i, j) * m(j, i);
    c[n - k] = -trace / Rational(static_cast<long long>(k));
  }
  return c;
}

namespace qpoly {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) {
  for (std::size_t k = p.size(); k-- > 0;)
    if (p[k] != 0) return static_cast<int>(k);
  return -1;
}

QPoly derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * Rational(static_cast<long long>(k));
  trim(d);
  return d;
}

QPoly multiply(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

QPoly subtract(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

std::pair<QPoly, QPoly> divide(const QPoly& num, const QPoly& den) {
  QPoly r = num;
  QPoly d = den;
  trim(r);
  trim(d);
  if (d.empty()) throw Error(ErrorKind::invalid_input, "polynomial division by zero");
  const int dd = degree(d);
  QPoly q(std::max<int>(0, degree(r) - dd + 1));
  while (degree(r) >= dd) {
    const int shift = degree(r) - dd;
    const Rational f = r[degree(r)] / d[dd];
    q[shift] = f;
    for (int k = 0; k <= dd; ++k) r[shift + k] -= f * d[k];
    trim(r);
  }
  trim(q);
  return {q, r};
}

namespace {
void make_monic(QPoly& p) {
  trim(p);
  if (p.empty()) return;
  const Rational lc = p.back();
  for (auto& c : p) c /= lc;
}

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

int distinct_real_roots(const QPoly& squarefree) {
  const int deg = degree(squarefree);
  if (deg <= 0) return 0;
  std::vector<QPoly> chain{squarefree, derivative(squarefree)};
  while (degree(chain.back()) > 0) {
    auto rem = divide(chain[chain.size() - 2], chain.back()).second;
    if (rem.empty()) break;
    for (auto& c : rem) c = -c;
    // positive rescaling keeps the sign pattern and bounds coefficient growth
    const Rational scale = abs(rem.back());
    for (auto& c : rem) c /= scale;
    chain.push_back(std::move(rem));
  }
  auto changes = [&](bool at_plus_infinity) {
    int count = 0;
    int last = 0;
    for (const auto& p : chain) {
      const int d = degree(p);
      if (d < 0) continue;
      int s = sign(p[d]);
      if (!at_plus_infinity && (d % 2 == 1)) s = -s;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}
}  // namespace

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
    make_monic(b);
  }
  make_monic(a);
  return a;
}

Rational evaluate(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

QPoly taylor_shift(const QPoly& p, const Rational& shift) {
  QPoly out = p;
  const std::size_t n = out.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k-- > i;) out[k] += shift * out[k + 1];
  return out;
}

int real_root_count(const QPoly& p0) {
  QPoly p = p0;
  trim(p);
  int total = 0;
  while (degree(p) > 0) {
    const QPoly g = gcd(p, derivative(p));
    const QPoly squarefree = divide(p, g).first;
    total += distinct_real_roots(squarefree);
    p = g;
  }
  return total;
}

int root_multiplicity(QPoly p, const Rational& x) {
  trim(p);
  int m = 0;
  while (!p.empty() && evaluate(p, x) == 0) {
    ++m;
    p = derivative(p);
  }
  return m;
}

}  // namespace qpoly

}  // namespace ptlab
