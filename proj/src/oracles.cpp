#include "ska/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ska/estimation.hpp"
#include "ska/special.hpp"

namespace ska {

namespace {

// Romberg integration on [a, b]; the integrands below are smooth.
double romberg(const std::function<double(double)>& f, double a, double b,
               double eps, int max_level = 22) {
  std::vector<double> prev, cur;
  double h = b - a;
  prev.push_back(0.5 * h * (f(a) + f(b)));
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double sum = 0.0;
    const std::int64_t points = 1ll << (level - 1);
    for (std::int64_t i = 0; i < points; ++i)
      sum += f(a + (2.0 * i + 1.0) * h);
    cur.assign(static_cast<std::size_t>(level) + 1, 0.0);
    cur[0] = 0.5 * prev[0] + h * sum;
    double pow4 = 1.0;
    for (int j = 1; j <= level; ++j) {
      pow4 *= 4.0;
      cur[static_cast<std::size_t>(j)] =
          cur[static_cast<std::size_t>(j - 1)] +
          (cur[static_cast<std::size_t>(j - 1)] - prev[static_cast<std::size_t>(j - 1)]) /
              (pow4 - 1.0);
    }
    if (level >= 5 &&
        std::abs(cur[static_cast<std::size_t>(level)] -
                 prev[static_cast<std::size_t>(level - 1)]) < eps)
      return cur[static_cast<std::size_t>(level)];
    prev = cur;
  }
  return prev.back();
}

}  // namespace

double marcum_q1_oracle(double a, double b) {
  if (b == 0.0) return 1.0;
  auto f = [a](double x) {
    return x * std::exp(-0.5 * (x - a) * (x - a)) * bessel_i0_scaled(a * x);
  };
  const double lo = std::max(b, a - 16.0);
  const double d = std::max(b - a, 0.0);
  const double hi = a + std::sqrt(d * d + 180.0);
  if (!(hi > lo)) return b <= a ? 1.0 : 0.0;
  return std::clamp(romberg(f, lo, hi, 1e-13), 0.0, 1.0);
}

double rician_tail_oracle(double mean_mag, double sigma2, double threshold) {
  // |Z|, Z ~ CN(nu, sigma2): density (2t/sigma2) e^{-(t-nu)^2/sigma2}
  //                          * [e^{-2 t nu / sigma2} I0(2 t nu / sigma2)].
  const double nu = mean_mag;
  auto f = [nu, sigma2](double t) {
    return 2.0 * t / sigma2 * std::exp(-(t - nu) * (t - nu) / sigma2) *
           bessel_i0_scaled(2.0 * t * nu / sigma2);
  };
  const double sd = std::sqrt(0.5 * sigma2);
  const double lo = std::max(threshold, nu - 16.0 * sd);
  const double dist = std::max(threshold - nu, 0.0);
  const double hi = nu + std::sqrt(dist * dist + 200.0 * sd * sd);
  if (!(hi > lo)) return threshold <= nu ? 1.0 : 0.0;
  return std::clamp(romberg(f, lo, hi, 1e-13), 0.0, 1.0);
}

double erfc_oracle(double x) {
  if (x < 0.0) return 2.0 - erfc_oracle(-x);
  if (x <= 1.5) {
    // erf series sum (-1)^n x^{2n+1} / (n! (2n+1)).
    double term = x, sum = x;
    for (int n = 1; n < 200; ++n) {
      term *= -x * x / n;
      sum += term / (2.0 * n + 1.0);
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return 1.0 - 2.0 * std::numbers::inv_sqrtpi * sum;
  }
  // erfc(x) = Gamma(1/2, x^2)/sqrt(pi) via the modified Lentz continued
  // fraction for the upper incomplete gamma.
  const double s = 0.5;
  const double xx = x * x;
  const double tiny = 1e-300;
  double bb = xx + 1.0 - s;
  double cc = 1.0 / tiny;
  double dd = 1.0 / bb;
  double h = dd;
  for (int i = 1; i < 300; ++i) {
    const double an = -i * (i - s);
    bb += 2.0;
    dd = an * dd + bb;
    if (std::abs(dd) < tiny) dd = tiny;
    cc = bb + an / cc;
    if (std::abs(cc) < tiny) cc = tiny;
    dd = 1.0 / dd;
    const double delta = dd * cc;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-xx + s * std::log(xx)) * h * std::numbers::inv_sqrtpi;
}

double bessel_i0_series_oracle(double x) {
  x = std::abs(x);
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0, comp = 0.0;
  for (int m = 1; m < 2000; ++m) {
    term *= q / (static_cast<double>(m) * m);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (term < 1e-19 * sum) break;
  }
  return sum;
}

double bessel_i0_scaled_asymptotic_oracle(double x, int terms) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < terms; ++k) {
    const double num = 2.0 * k - 1.0;
    term *= num * num / (8.0 * k * x);
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double bi_awgn_mi_mc_oracle(double amplitude, double sigma2,
                            std::uint64_t samples, RngStream& rng) {
  // I = 1 - E_{y | q=+1} log2(1 + exp(-2 a y / sigma2)), by symmetry of the
  // input distribution.
  const double sd = std::sqrt(sigma2);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double y = amplitude + sd * rng.normal();
    const double t = -2.0 * amplitude * y / sigma2;
    double lg;
    if (t > 36.0)
      lg = t / std::numbers::ln2;
    else if (t < -745.0)
      lg = 0.0;
    else
      lg = std::log1p(std::exp(t)) / std::numbers::ln2;
    acc += lg;
  }
  return 1.0 - acc / static_cast<double>(samples);
}

double attack_strength_grid_oracle(std::complex<double> q_dag_r, double q_dag_q,
                                   double zeta, double c, int m,
                                   double sigma2_n, double w_max, double step) {
  // Marginalizing the gain leaves q'r ~ CN(mu_g q'q, s2g (q'q)^2 + s2n q'q);
  // only the mean and variance depend on w, so the exact log-likelihood of
  // the projection is evaluated on a grid.
  double best_w = 0.0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (double w = 0.0; w <= w_max + 0.5 * step; w += step) {
    const GainPrior prior = gain_prior(zeta, c, m, w);
    const double var = prior.sigma2_g * q_dag_q * q_dag_q + sigma2_n * q_dag_q;
    const double ll = -std::log(var) -
                      std::norm(q_dag_r - prior.mu_g * q_dag_q) / var;
    if (ll > best_ll) {
      best_ll = ll;
      best_w = w;
    }
  }
  return best_w;
}

double ks_statistic(std::vector<double>& samples,
                    const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double ks_critical(std::size_t n, double alpha) {
  double c;
  if (alpha == 0.01)
    c = 1.6276;
  else if (alpha == 0.05)
    c = 1.3581;
  else
    throw std::invalid_argument("ks_critical: unsupported alpha");
  return c / std::sqrt(static_cast<double>(n));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need matching vectors, n >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ska
