#include "ska/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ska/estimation.hpp"
#include "ska/special.hpp"

namespace ska {

namespace {

constexpr int kMiNodes = 96;

const Quadrature& mi_quadrature() {
  static const Quadrature q = gauss_hermite(kMiNodes);
  return q;
}

// log2(1 + e^x) without overflow.
double softplus2(double x) {
  if (x > 36.0) return x / std::numbers::ln2;
  if (x < -745.0) return 0.0;
  return std::log1p(std::exp(x)) / std::numbers::ln2;
}

}  // namespace

SinrPair sinr_analytic(const SystemConfig& config, int k, double w) {
  const double c = config.c(k);
  const double w2c = w * w * c;
  const double denom = 1.0 + (1.0 + w * w) * c;
  const double pdb = config.p_d * config.beta.at(static_cast<std::size_t>(k));
  SinrPair s;
  s.sinr_bob = (config.M * c + w2c + 1.0) /
               (denom * (config.K - 1 + 1.0 / pdb));
  s.sinr_eve = (config.M * w2c + c + 1.0) / (denom * (config.K - 1));
  s.ratio = s.sinr_bob / s.sinr_eve;
  return s;
}

double bi_awgn_mutual_information(double gain_mag, double noise_var) {
  if (!(noise_var > 0.0))
    throw std::invalid_argument("bi_awgn_mutual_information: noise_var must be > 0");
  if (!(gain_mag >= 0.0))
    throw std::invalid_argument("bi_awgn_mutual_information: gain must be >= 0");
  if (gain_mag == 0.0) return 0.0;
  // Real-projected SNR s = |g|^2 / (noise_var/2).
  const double s = 2.0 * gain_mag * gain_mag / noise_var;
  const double alpha = 2.0 * s;
  const double beta = 2.0 * std::sqrt(2.0 * s);
  const Quadrature& q = mi_quadrature();
  double acc = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    acc += q.weights[i] * softplus2(-alpha - beta * q.nodes[i]);
  const double mi = 1.0 - acc * std::numbers::inv_sqrtpi;
  return std::clamp(mi, 0.0, 1.0);
}

std::int64_t key_length(double i_bob, double i_eve, int n_d, double a_slack,
                        double b_slack) {
  const double raw =
      n_d * (i_bob - i_eve) - 2.0 * a_slack - 2.0 - b_slack;
  if (raw <= 0.0) return 0;
  // Guard the floor against rounding of quantities that are whole numbers
  // in exact arithmetic.
  return static_cast<std::int64_t>(std::floor(raw + 1e-9));
}

double outage_probability(std::complex<double> g_e_hat,
                          std::complex<double> mu_ge_hat, double sigma2_ge_hat,
                          double delta) {
  if (!(sigma2_ge_hat > 0.0))
    throw std::invalid_argument("outage_probability: variance must be > 0");
  if (!(delta >= 0.0))
    throw std::invalid_argument("outage_probability: delta must be >= 0");
  const double a = std::sqrt(2.0 * std::norm(mu_ge_hat) / sigma2_ge_hat);
  const double thr = (1.0 + delta) * std::abs(g_e_hat);
  const double b = std::sqrt(2.0 * thr * thr / sigma2_ge_hat);
  return marcum_q1(a, b);
}

double marcum_ub_exp(double a, double b) {
  if (a > b) throw std::domain_error("marcum_ub_exp: requires a <= b");
  const double d = b - a;
  return std::exp(-0.5 * d * d);
}

double marcum_ub_bessel(double a, double b) {
  if (a > b) throw std::domain_error("marcum_ub_bessel: requires a <= b");
  const double d = b - a;
  return bessel_i0_scaled(a * b) *
         (std::exp(-0.5 * d * d) +
          a * std::sqrt(std::numbers::pi / 2.0) *
              erfc(d / std::numbers::sqrt2));
}

double outage_bound_asymptotic(double c, double w, int m, int k_users,
                               double p_d_beta, int n_d, double delta) {
  const double w2c = w * w * c;
  const double nu = k_users - 1 + 1.0 / p_d_beta;
  const double denom =
      1.0 + w * w * c * c * nu /
                (n_d * (1.0 + w2c) + nu * (1.0 + (1.0 + w * w) * c));
  return std::exp(-(1.0 + w2c) * m * delta * delta / denom);
}

OutageBounds outage_bounds(double a, double b, double c, double w, int m,
                           int k_users, double p_d_beta, int n_d,
                           double delta) {
  return OutageBounds{marcum_ub_exp(a, b), marcum_ub_bessel(a, b),
                      outage_bound_asymptotic(c, w, m, k_users, p_d_beta, n_d,
                                              delta)};
}

double mean_abs_ge_sq(double c, double w, int m) {
  return (m * w * w * c + c + 1.0) / (m * (1.0 + (1.0 + w * w) * c));
}

double nmse_ideal(const SystemConfig& config, int k, double w) {
  const double c = config.c(k);
  return 1.0 / (mean_abs_ge_sq(c, w, config.M) * (1.0 + w * w * c) * config.M);
}

double nmse_analytic(const SystemConfig& config, int k, double w) {
  const double c = config.c(k);
  const double pdb = config.p_d * config.beta.at(static_cast<std::size_t>(k));
  const double mse =
      analytic_mse_eve(c, w, config.M, config.K, pdb, config.N_d);
  return mse / mean_abs_ge_sq(c, w, config.M);
}

}  // namespace ska
