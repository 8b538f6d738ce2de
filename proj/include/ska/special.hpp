#pragma once

#include <vector>

namespace ska {

/// Modified Bessel function of the first kind, order zero.
/// Overflows to +inf for x beyond roughly 709; use bessel_i0_scaled there.
double bessel_i0(double x);

/// Exponentially scaled variant e^{-|x|} I0(x), safe for all finite x.
double bessel_i0_scaled(double x);

/// Complementary error function, standard normalization
/// erfc(x) = (2/sqrt(pi)) * integral_x^inf exp(-t^2) dt.
double erfc(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// First-order Marcum Q-function
///   Q1(a,b) = integral_b^inf x exp(-(x^2+a^2)/2) I0(ax) dx,
/// i.e. the upper tail of a Rice(a, 1) magnitude. Absolute error <= 1e-10.
/// Series evaluation in a numerically stable scaled form; direct numeric
/// integration takes over for large a*b where the series is impractical.
/// Throws std::invalid_argument for negative arguments.
double marcum_q1(double a, double b);

/// Gauss-Hermite rule: integral f(t) e^{-t^2} dt ~= sum w_i f(t_i),
/// exact for polynomials of degree <= 2n-1.
struct Quadrature {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, sum = sqrt(pi)
};

/// Nodes and weights for the n-point Gauss-Hermite rule, 2 <= n <= 256.
Quadrature gauss_hermite(int n);

}  // namespace ska
