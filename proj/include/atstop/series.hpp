#pragma once

#include <span>
#include <vector>

/// Truncated Taylor series arithmetic.
///
/// A series is stored by its normalized coefficients c_j = f^(j)(a) / j!,
/// j = 0..k, around an implicit expansion point a. All operations keep the
/// truncation order of their inputs (the shorter one for binary operations).
namespace atstop::series {

using Series = std::vector<double>;

/// Derivatives f^(j)(a) -> normalized coefficients.
Series from_derivatives(std::span<const double> derivs);
/// Normalized coefficients -> derivatives f^(j)(a).
std::vector<double> to_derivatives(std::span<const double> coeffs);

Series multiply(std::span<const double> lhs, std::span<const double> rhs);

/// 1/f by the convolution recursion r_0 = 1/c_0,
/// r_j = -(sum_{i=1..j} c_i r_{j-i}) / c_0. Throws std::domain_error if c_0 == 0.
Series reciprocal(std::span<const double> coeffs);

/// exp(f) via k e_k = sum_{j=1..k} j f_j e_{k-j}, e_0 = exp(f_0).
Series exp(std::span<const double> coeffs);

/// Series of 1/(p - u) around u = a (requires a != p), truncated at order k.
Series pole(double p, double a, int k);

/// Series of exp(s u) around u = a, truncated at order k.
Series exponential(double s, double a, int k);

}  // namespace atstop::series
