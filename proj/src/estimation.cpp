#include "ska/estimation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ska {

namespace {
constexpr double kGainFloor = 1e-6;
}

std::complex<double> project_onto_sequence(const Eigen::VectorXcd& r,
                                           const Eigen::VectorXd& q) {
  if (r.size() != q.size())
    throw std::invalid_argument("project_onto_sequence: length mismatch");
  return q.cast<std::complex<double>>().dot(r);
}

double estimate_attack_strength(std::complex<double> q_dag_r, double q_dag_q,
                                double zeta, double c, int m) {
  if (!(q_dag_q > 0.0))
    throw std::invalid_argument("estimate_attack_strength: q'q must be > 0");
  if (!(c > 0.0))
    throw std::invalid_argument("estimate_attack_strength: c must be > 0");
  if (!(zeta >= 0.0))
    throw std::invalid_argument("estimate_attack_strength: zeta must be >= 0");
  const double g_ls = std::max(q_dag_r.real() / q_dag_q, kGainFloor);
  const double ratio = zeta / (g_ls * std::sqrt(c * m));
  const double w2 = ratio - (1.0 + 1.0 / c);
  // Cancellation in the subtraction leaves a few ulps of the ratio; the
  // square root would amplify that into a spurious 1e-8-scale estimate.
  const double noise_floor = 32.0 * std::numeric_limits<double>::epsilon() * ratio;
  return w2 > noise_floor ? std::sqrt(w2) : 0.0;
}

GainPrior gain_prior(double zeta, double c, int m, double w) {
  const double denom = 1.0 + (1.0 + w * w) * c;
  GainPrior p;
  p.mu_g = std::sqrt(c) / denom * zeta / std::sqrt(static_cast<double>(m));
  p.sigma2_g = (1.0 + w * w * c) / (denom * m);
  return p;
}

BobEstimate estimate_edcg_bob(std::complex<double> q_dag_r, double q_dag_q,
                              double zeta, double c, int m, double sigma2_n,
                              double w) {
  if (!(sigma2_n > 0.0))
    throw std::invalid_argument("estimate_edcg_bob: sigma2_n must be > 0");
  if (!(q_dag_q > 0.0))
    throw std::invalid_argument("estimate_edcg_bob: q'q must be > 0");
  const GainPrior prior = gain_prior(zeta, c, m, w);
  BobEstimate e;
  e.mu_g = prior.mu_g;
  e.sigma2_g = prior.sigma2_g;
  const double ratio = sigma2_n / prior.sigma2_g;
  e.g_hat = (q_dag_r + ratio * prior.mu_g) / (q_dag_q + ratio);
  e.sigma2_g_hat =
      sigma2_n * prior.sigma2_g / (q_dag_q * prior.sigma2_g + sigma2_n);
  return e;
}

std::complex<double> estimate_edcg_eve(std::complex<double> g_hat, double zeta,
                                       double c, int m, double w) {
  const double coef = w * c / (1.0 + w * w * c);
  return coef * (zeta / std::sqrt(c * m) - g_hat);
}

EvePosterior posterior_eve(std::complex<double> q_dag_r, double q_dag_q,
                           double zeta, double c, int m, double sigma2_n,
                           double w) {
  const BobEstimate bob =
      estimate_edcg_bob(q_dag_r, q_dag_q, zeta, c, m, sigma2_n, w);
  const double coef = w * c / (1.0 + w * w * c);
  EvePosterior p;
  p.mu_ge_hat = coef * (zeta / std::sqrt(c * m) - bob.g_hat);
  p.sigma2_ge_hat =
      1.0 / ((1.0 + w * w * c) * m) +
      coef * coef * bob.sigma2_g * sigma2_n /
          (bob.sigma2_g * q_dag_q + sigma2_n);
  return p;
}

double analytic_mse_eve(double c, double w, int m, int k_users, double p_d_beta,
                        int n_d) {
  const double w2c = w * w * c;
  const double coef = w * c / (1.0 + w2c);
  const double noise = k_users - 1 + 1.0 / p_d_beta;
  return (1.0 / m) *
         (1.0 / (1.0 + w2c) +
          coef * coef / (n_d / noise + (1.0 + (1.0 + w * w) * c) / (1.0 + w2c)));
}

LeakageEstimate estimate_leakage(std::complex<double> q_dag_r, double q_dag_q,
                                 double zeta, double c, int m, double sigma2_n,
                                 std::optional<double> w_known) {
  LeakageEstimate est;
  est.w_hat = w_known ? *w_known
                      : estimate_attack_strength(q_dag_r, q_dag_q, zeta, c, m);
  const BobEstimate bob =
      estimate_edcg_bob(q_dag_r, q_dag_q, zeta, c, m, sigma2_n, est.w_hat);
  est.mu_g = bob.mu_g;
  est.sigma2_g = bob.sigma2_g;
  est.g_hat = bob.g_hat;
  est.sigma2_g_hat = bob.sigma2_g_hat;
  est.g_e_hat = estimate_edcg_eve(bob.g_hat, zeta, c, m, est.w_hat);
  const EvePosterior eve =
      posterior_eve(q_dag_r, q_dag_q, zeta, c, m, sigma2_n, est.w_hat);
  est.mu_ge_hat = eve.mu_ge_hat;
  est.sigma2_ge_hat = eve.sigma2_ge_hat;
  return est;
}

double estimate_attack_strength(const Eigen::VectorXcd& r,
                                const Eigen::VectorXd& q, double zeta, double c,
                                int m) {
  return estimate_attack_strength(project_onto_sequence(r, q), q.squaredNorm(),
                                  zeta, c, m);
}

BobEstimate estimate_edcg_bob(const Eigen::VectorXcd& r,
                              const Eigen::VectorXd& q, double zeta, double c,
                              int m, double sigma2_n, double w) {
  return estimate_edcg_bob(project_onto_sequence(r, q), q.squaredNorm(), zeta,
                           c, m, sigma2_n, w);
}

EvePosterior posterior_eve(const Eigen::VectorXcd& r, const Eigen::VectorXd& q,
                           double zeta, double c, int m, double sigma2_n,
                           double w) {
  return posterior_eve(project_onto_sequence(r, q), q.squaredNorm(), zeta, c,
                       m, sigma2_n, w);
}

LeakageEstimate estimate_leakage(const Eigen::VectorXcd& r,
                                 const Eigen::VectorXd& q, double zeta,
                                 double c, int m, double sigma2_n,
                                 std::optional<double> w_known) {
  return estimate_leakage(project_onto_sequence(r, q), q.squaredNorm(), zeta,
                          c, m, sigma2_n, w_known);
}

}  // namespace ska
