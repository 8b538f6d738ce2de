#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "ska/rng.hpp"

namespace ska {

// Independent brute-force references used by the verification suite and the
// tests. Each deliberately avoids the code path of the production routine
// it checks: different integrator, different series, or plain sampling.

/// Marcum Q1 by Romberg integration of the defining integral (scaled
/// integrand). Absolute error well below 1e-10 on the tested range.
double marcum_q1_oracle(double a, double b);

/// Upper tail of a Rician magnitude |Z|, Z ~ CN(mean_mag, sigma2), by
/// Romberg integration of the density.
double rician_tail_oracle(double mean_mag, double sigma2, double threshold);

/// erfc by Maclaurin series (x <= 1.5) or Lentz continued fraction for the
/// upper incomplete gamma (x > 1.5); negative x by reflection.
double erfc_oracle(double x);

/// I0 power series with compensated (Kahan) summation, valid to x ~ 600.
double bessel_i0_series_oracle(double x);

/// Leading terms of the large-x expansion of e^{-x} I0(x).
double bessel_i0_scaled_asymptotic_oracle(double x, int terms);

/// Monte-Carlo mutual information of BPSK over real AWGN at amplitude a and
/// noise variance sigma2 (bits/use), from `samples` channel draws.
double bi_awgn_mi_mc_oracle(double amplitude, double sigma2,
                            std::uint64_t samples, RngStream& rng);

/// Exact-marginal-likelihood grid search for the attack strength: maximizes
/// the Gaussian likelihood of the projected observation q'r given zeta over
/// w in [0, w_max] with the given resolution.
double attack_strength_grid_oracle(std::complex<double> q_dag_r, double q_dag_q,
                                   double zeta, double c, int m,
                                   double sigma2_n, double w_max, double step);

/// Two-sided Kolmogorov-Smirnov statistic against a CDF. `samples` is
/// consumed (sorted in place).
double ks_statistic(std::vector<double>& samples,
                    const std::function<double(double)>& cdf);

/// Large-n critical value of the KS statistic at significance alpha
/// (supported: 0.01, 0.05).
double ks_critical(std::size_t n, double alpha);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ska
