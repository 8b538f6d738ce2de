#pragma once

#include <complex>
#include <cstdint>

#include "ska/config.hpp"

namespace ska {

/// Average SINRs at a user and its eavesdropper under attack strength w.
struct SinrPair {
  double sinr_bob;
  double sinr_eve;
  double ratio;  // sinr_bob / sinr_eve
};

/// Closed-form average SINRs:
///   bob: (M c + w^2 c + 1) / ((1 + (1+w^2) c)(K - 1 + 1/(p_d beta)))
///   eve: (M w^2 c + c + 1) / ((1 + (1+w^2) c)(K - 1))
SinrPair sinr_analytic(const SystemConfig& config, int k, double w);

/// Mutual information in bits per channel use of an equiprobable +-1 input
/// through r = g q + n with n ~ CN(0, noise_var). Phase derotation and the
/// real projection are information-lossless for BPSK, leaving a binary-input
/// real AWGN channel with amplitude |g| and noise variance noise_var/2,
/// integrated by 96-node Gauss-Hermite quadrature (absolute error <= 1e-6).
double bi_awgn_mutual_information(double gain_mag, double noise_var);

/// Adaptive key length floor([N_d (i_bob - i_eve) - 2a - 2 - b]^+).
std::int64_t key_length(double i_bob, double i_eve, int n_d, double a_slack,
                        double b_slack);

/// Conditional secrecy-outage probability: under the complex-Gaussian
/// posterior of the eavesdropper gain, |g^e| is Rician and
///   P(|g^e| > (1+delta)|g_e_hat|)
///     = Q1( sqrt(2|mu|^2/s2), sqrt(2|(1+delta) g_e_hat|^2/s2) ).
double outage_probability(std::complex<double> g_e_hat,
                          std::complex<double> mu_ge_hat, double sigma2_ge_hat,
                          double delta);

/// Simple exponential bound Q1(a,b) <= exp(-(b-a)^2/2), valid for a <= b.
/// Throws std::domain_error when a > b.
double marcum_ub_exp(double a, double b);

/// Tighter Bessel-weighted bound
///   Q1(a,b) <= e^{-ab} I0(ab) { exp(-(b-a)^2/2)
///                               + a sqrt(pi/2) erfc((b-a)/sqrt(2)) }.
double marcum_ub_bessel(double a, double b);

/// Large-M limit of the average outage bound:
///   exp( -(1+w^2 c) M delta^2 /
///        (1 + w^2 c^2 nu / (N_d (1+w^2 c) + nu (1+(1+w^2)c))) ),
/// nu = K - 1 + 1/(p_d beta).
double outage_bound_asymptotic(double c, double w, int m, int k_users,
                               double p_d_beta, int n_d, double delta);

struct OutageBounds {
  double ub_exp;
  double ub_tight;
  double ub_asymptotic;
};

OutageBounds outage_bounds(double a, double b, double c, double w, int m,
                           int k_users, double p_d_beta, int n_d, double delta);

/// Marginal second moment of the eavesdropper gain,
/// (M w^2 c + c + 1) / (M (1 + (1+w^2) c)); the NMSE normalizer.
double mean_abs_ge_sq(double c, double w, int m);

/// Ideal (known user gain) NMSE lower bound:
/// 1 / (E|g^e|^2 (1 + w^2 c) M).
double nmse_ideal(const SystemConfig& config, int k, double w);

/// Analytic NMSE of the eavesdropper-gain estimate at true w.
double nmse_analytic(const SystemConfig& config, int k, double w);

}  // namespace ska
