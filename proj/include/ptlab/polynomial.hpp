#pragma once

#include <span>
#include <vector>

#include "ptlab/matrix.hpp"

namespace ptlab::poly {

// Coefficient vectors are indexed by power: p[k] multiplies x^k.

Complex evaluate(std::span<const Complex> p, Complex x);
CVector derivative(std::span<const Complex> p);
CVector multiply(std::span<const Complex> a, std::span<const Complex> b);
/// Coefficients of p(x + shift).
CVector taylor_shift(std::span<const Complex> p, Complex shift);
/// Monic polynomial with the given roots.
CVector from_roots(std::span<const Complex> roots);

/// All roots by simultaneous Aberth–Ehrlich iteration.
CVector roots(std::span<const Complex> p, int max_iterations = 500);

/// Largest coefficient difference after padding to equal length.
double max_coefficient_difference(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace ptlab::poly
