#include "ska/special.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace ska {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Power series sum_m (x^2/4)^m / (m!)^2; all terms positive, no cancellation.
// Usable up to x ~ 600 without overflow (largest term ~ e^x / sqrt(2 pi x)).
double i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 1000; ++m) {
    term *= q / (static_cast<double>(m) * m);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Large-argument expansion of e^{-x} I0(x); truncation error below 1e-15
// for x >= 30.
double i0_scaled_asymptotic(double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double num = 2.0 * k - 1.0;
    term *= num * num / (8.0 * k * x);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// Scaled Bessel ratios e^{-x} I_k(x) for k = 0..kmax by backward (Miller)
// recurrence, normalized with I0(x) + 2 sum_{k>=1} I_k(x) = e^x.
std::vector<double> scaled_ik_table(double x, int kmax) {
  const int start = kmax + 2 * static_cast<int>(std::sqrt(static_cast<double>(kmax) + 1.0)) + 24;
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  double fkp1 = 0.0;
  double fk = 1e-280;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double fkm1 = fkp1 + (2.0 * k / x) * fk;
    norm += 2.0 * fk;
    if (k <= kmax) out[static_cast<std::size_t>(k)] = fk;
    fkp1 = fk;
    fk = fkm1;
    if (fk > 1e280) {
      const double r = 1e-280;
      fk *= r;
      fkp1 *= r;
      norm *= r;
      for (auto& v : out) v *= r;
    }
  }
  norm += fk;  // k = 0 term
  out[0] = fk;
  for (auto& v : out) v /= norm;
  return out;
}

// Marcum Q1 by the Poisson mixture of Erlang tails,
//   Q1(a,b) = sum_n e^{-x} x^n/n! * e^{-y} sum_{j<=n} y^j/j!,
// with x = a^2/2, y = b^2/2. Intended for small a*b where the Bessel series
// ratio a/b or b/a is ill-defined or the table is wasteful.
double marcum_small(double a, double b) {
  const double x = 0.5 * a * a;
  const double y = 0.5 * b * b;
  double pois = std::exp(-x);        // e^{-x} x^n / n!
  double gterm = std::exp(-y);       // e^{-y} y^n / n!
  double gtail = gterm;              // e^{-y} sum_{j<=n} y^j/j!
  double q = pois * gtail;
  for (int n = 1; n < 4000; ++n) {
    pois *= x / n;
    gterm *= y / n;
    gtail += gterm;
    const double t = pois * gtail;
    q += t;
    if (t < 1e-16 && n > 4 + static_cast<int>(x)) break;
  }
  return std::min(q, 1.0);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps) {
  if (!(b > a)) return 0.0;
  // Seed with a few panels so a narrow bump inside [a,b] is not missed.
  const int panels = 8;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h;
    const double x1 = x0 + h;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0), fm = f(xm), f1 = f(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += adaptive_simpson(f, x0, x1, f0, fm, f1, whole, eps / panels, 48);
  }
  return total;
}

// Direct integration of x exp(-(x-a)^2/2) * [e^{-ax} I0(ax)] over [b, inf).
double marcum_quadrature(double a, double b) {
  const double lo = std::max(b, a - 14.0);
  const double d = std::max(b - a, 0.0);
  const double hi = a + std::sqrt(d * d + 170.0);
  if (!(hi > lo)) return (b <= a) ? 1.0 : 0.0;
  auto f = [a](double x) {
    return x * std::exp(-0.5 * (x - a) * (x - a)) * bessel_i0_scaled(a * x);
  };
  const double q = integrate(f, lo, hi, 1e-12);
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace

double bessel_i0_scaled(double x) {
  x = std::abs(x);
  if (x < 30.0) return i0_series(x) * std::exp(-x);
  return i0_scaled_asymptotic(x);
}

double bessel_i0(double x) {
  x = std::abs(x);
  if (x < 30.0) return i0_series(x);
  return i0_scaled_asymptotic(x) * std::exp(x);
}

double erfc(double x) { return std::erfc(x); }

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
}

double marcum_q1(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0))
    throw std::invalid_argument("marcum_q1: arguments must be non-negative");
  if (b == 0.0) return 1.0;
  if (a == 0.0) return std::exp(-0.5 * b * b);
  const double bma = b - a;
  if (bma > 42.0) return 0.0;  // Q1 <= exp(-(b-a)^2/2) < 1e-300
  const double x = a * b;
  if (x < 1.0) {
    // Here b < 1/a; for large a the mass below b is < exp(-(a-b)^2/2).
    if (a > 30.0) return 1.0;
    return marcum_small(a, b);
  }
  if (x > 600.0) return marcum_quadrature(a, b);

  // Scaled series: Q1 = e^{-(b-a)^2/2} sum_k (a/b)^k e^{-ab} I_k(ab) for
  // a <= b, and the complementary sum in (b/a) for a > b.
  const bool direct = a <= b;
  const double rho = direct ? a / b : b / a;
  int kmax;
  if (rho < 0.999) {
    kmax = static_cast<int>(40.0 / -std::log(rho)) + 4;
  } else {
    kmax = static_cast<int>(std::sqrt(80.0 * x)) + 12;
  }
  kmax = std::min(kmax, static_cast<int>(std::sqrt(80.0 * x)) + 12);
  const auto ik = scaled_ik_table(x, kmax);
  const double envelope = std::exp(-0.5 * bma * bma);
  if (direct) {
    double sum = ik[0];
    double p = 1.0;
    for (int k = 1; k <= kmax; ++k) {
      p *= rho;
      sum += p * ik[static_cast<std::size_t>(k)];
      if (p * ik[static_cast<std::size_t>(k)] < 1e-18 * sum) break;
    }
    return std::clamp(envelope * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  double p = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    p *= rho;
    const double t = p * ik[static_cast<std::size_t>(k)];
    sum += t;
    if (t < 1e-18 * std::max(sum, 1e-30)) break;
  }
  return std::clamp(1.0 - envelope * sum, 0.0, 1.0);
}

Quadrature gauss_hermite(int n) {
  if (n < 2 || n > 256)
    throw std::invalid_argument("gauss_hermite: n must be in [2, 256]");
  // Golub-Welsch: eigen-decompose the Jacobi matrix of the Hermite weight.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double off = std::sqrt(0.5 * (i + 1));
    jacobi(i, i + 1) = off;
    jacobi(i + 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  Quadrature q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    q.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    q.weights[static_cast<std::size_t>(i)] = kSqrtPi * v * v;
  }
  // The rule is symmetric; average out eigensolver asymmetry.
  for (int i = 0, j = n - 1; i < j; ++i, --j) {
    const double t = 0.5 * (q.nodes[static_cast<std::size_t>(i)] -
                            q.nodes[static_cast<std::size_t>(j)]);
    q.nodes[static_cast<std::size_t>(i)] = t;
    q.nodes[static_cast<std::size_t>(j)] = -t;
    const double w = 0.5 * (q.weights[static_cast<std::size_t>(i)] +
                            q.weights[static_cast<std::size_t>(j)]);
    q.weights[static_cast<std::size_t>(i)] = w;
    q.weights[static_cast<std::size_t>(j)] = w;
  }
  if (n % 2 == 1) q.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return q;
}

}  // namespace ska
