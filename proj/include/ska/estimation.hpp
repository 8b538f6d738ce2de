#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace ska {

/// Bob-side leakage estimate for one user and one coherence block, together
/// with the posterior parameters the outage analysis needs.
///
/// Conventions: w is the attack strength used by the estimators (the ML
/// estimate in production, the true value in diagnostic mode); all gains
/// are conditioned on the announced training-signal strength zeta.
struct LeakageEstimate {
  double w_hat = 0.0;                 // attack strength fed to the stages
  double mu_g = 0.0;                  // prior mean of g given zeta
  double sigma2_g = 0.0;              // prior variance of g given zeta
  std::complex<double> g_hat;         // posterior mean of g (MMSE estimate)
  double sigma2_g_hat = 0.0;          // posterior variance of g
  std::complex<double> g_e_hat;       // MMSE estimate of the eavesdropper gain
  std::complex<double> mu_ge_hat;     // posterior mean of g^e (== g_e_hat)
  double sigma2_ge_hat = 0.0;         // posterior variance of g^e
};

/// Closed-form ML estimate of the attack strength from the received-energy
/// deficit:  w_hat^2 = [ zeta / (g_ls sqrt(c M)) - (1 + 1/c) ]^+  with
/// g_ls = Re(r'q)/(q'q). The real part is taken because the gain is
/// real-positive to first order; g_ls is clamped below at 1e-6 so a
/// vanishing received strength maps to a large but finite estimate.
double estimate_attack_strength(std::complex<double> q_dag_r, double q_dag_q,
                                double zeta, double c, int m);

/// Prior law of the user's downlink gain given the training energy.
struct GainPrior {
  double mu_g;
  double sigma2_g;
};
GainPrior gain_prior(double zeta, double c, int m, double w);

struct BobEstimate {
  std::complex<double> g_hat;
  double mu_g;
  double sigma2_g;
  double sigma2_g_hat;
};

/// MMSE estimate of the user's own downlink gain and its posterior
/// variance. `q_dag_r` is the conjugated projection q'r of the received
/// block onto the known sequence (see README on the inner-product
/// convention), `q_dag_q` its energy, `sigma2_n` the per-symbol
/// interference-plus-noise variance.
BobEstimate estimate_edcg_bob(std::complex<double> q_dag_r, double q_dag_q,
                              double zeta, double c, int m, double sigma2_n,
                              double w);

/// MMSE estimate of the eavesdropper's downlink gain from the
/// complementary-strength relation:
///   g_e_hat = w c / (1 + w^2 c) * (zeta / sqrt(c M) - g_hat).
std::complex<double> estimate_edcg_eve(std::complex<double> g_hat, double zeta,
                                       double c, int m, double w);

struct EvePosterior {
  std::complex<double> mu_ge_hat;
  double sigma2_ge_hat;
};

/// Posterior mean and variance of the eavesdropper gain given the
/// observables. The variance is observation-independent:
///   1/((1+w^2 c) M) + (w c/(1+w^2 c))^2 s2g s2n / (s2g q'q + s2n).
EvePosterior posterior_eve(std::complex<double> q_dag_r, double q_dag_q,
                           double zeta, double c, int m, double sigma2_n,
                           double w);

/// Closed-form mean-square error of the eavesdropper-gain estimate at true
/// attack strength w (equals the posterior variance with q'q = N_d).
double analytic_mse_eve(double c, double w, int m, int k_users, double p_d_beta,
                        int n_d);

/// Runs the three estimation stages on one user's sufficient statistics.
/// With `w_known` empty the ML attack-strength estimate is plugged into the
/// later stages (production); a supplied value isolates the plug-in loss
/// (diagnostics).
LeakageEstimate estimate_leakage(std::complex<double> q_dag_r, double q_dag_q,
                                 double zeta, double c, int m, double sigma2_n,
                                 std::optional<double> w_known = std::nullopt);

// Vector-form convenience overloads; q holds the +-1 symbols.
double estimate_attack_strength(const Eigen::VectorXcd& r,
                                const Eigen::VectorXd& q, double zeta, double c,
                                int m);
BobEstimate estimate_edcg_bob(const Eigen::VectorXcd& r,
                              const Eigen::VectorXd& q, double zeta, double c,
                              int m, double sigma2_n, double w);
EvePosterior posterior_eve(const Eigen::VectorXcd& r, const Eigen::VectorXd& q,
                           double zeta, double c, int m, double sigma2_n,
                           double w);
LeakageEstimate estimate_leakage(const Eigen::VectorXcd& r,
                                 const Eigen::VectorXd& q, double zeta,
                                 double c, int m, double sigma2_n,
                                 std::optional<double> w_known = std::nullopt);

/// q'r with the convention that makes g_hat the posterior mean (for real
/// BPSK symbols this is the complex conjugate of r'q).
std::complex<double> project_onto_sequence(const Eigen::VectorXcd& r,
                                           const Eigen::VectorXd& q);

}  // namespace ska
