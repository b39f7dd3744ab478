#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ptlab/matrix.hpp"

namespace ptlab {

using Rational = boost::multiprecision::cpp_rational;
using QMatrix = Matrix<Rational>;

/// Polynomial with exact rational coefficients, index = power.
using QPoly = std::vector<Rational>;

/// Exact value of a finite double (every double is a dyadic rational).
Rational to_rational(double x);
double to_double(const Rational& q);

/// Exact image of a matrix whose imaginary parts are all zero.
std::optional<QMatrix> exact_real(const CMatrix& m);
CMatrix to_complex(const QMatrix& m);

/// Monic det(λI − M) by Faddeev–LeVerrier in exact arithmetic.
QPoly characteristic_polynomial_exact(const QMatrix& m);

namespace qpoly {

void trim(QPoly& p);
int degree(const QPoly& p);
QPoly derivative(const QPoly& p);
QPoly multiply(const QPoly& a, const QPoly& b);
QPoly subtract(const QPoly& a, const QPoly& b);
/// Returns {quotient, remainder}.
std::pair<QPoly, QPoly> divide(const QPoly& num, const QPoly& den);
QPoly gcd(QPoly a, QPoly b);
Rational evaluate(const QPoly& p, const Rational& x);
/// Coefficients of p(x + shift).
QPoly taylor_shift(const QPoly& p, const Rational& shift);
/// Number of real roots counted with multiplicity (Sturm sequences on the square-free factors).
int real_root_count(const QPoly& p);
/// Multiplicity of x as a root of p (0 when p(x) ≠ 0).
int root_multiplicity(QPoly p, const Rational& x);

}  // namespace qpoly

}  // namespace ptlab
