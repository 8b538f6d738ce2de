#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ska/config.hpp"
#include "ska/estimation.hpp"
#include "ska/rng.hpp"

namespace ska {

/// Everything recorded about one tracked user in one trial.
struct TrialUser {
  double w_true = 0.0;
  double w_hat = 0.0;
  double zeta = 0.0;
  std::complex<double> g;
  std::complex<double> g_hat;
  std::complex<double> g_e;
  std::complex<double> g_e_hat;        // plug-in attack strength
  std::complex<double> g_e_hat_truew;  // diagnostic, true attack strength
  std::complex<double> mu_ge_hat;
  double sigma2_ge_hat = 0.0;
  std::complex<double> q_dag_r;  // projection of the received block onto q
  double sig_pow_bob = 0.0;  // |g|^2
  double int_pow_bob = 0.0;  // realized per-symbol interference + noise power
  double sig_pow_eve = 0.0;
  double int_pow_eve = 0.0;
  double sinr_emp_bob = 0.0;
  double sinr_emp_eve = 0.0;
  double i_bob = 0.0;
  double i_eve_hat = 0.0;   // margin-inflated estimated gain
  double i_eve_hat0 = 0.0;  // estimated gain without margin
  double i_eve_true = 0.0;  // true eavesdropper gain (diagnostic)
  std::int64_t s_hat = 0;
  double p_out = 0.0;
  double p_out_truew = 0.0;
  bool outage = false;
  bool outage_truew = false;
};

struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::vector<TrialUser> users;  // config.tracked() entries
};

struct TrialOptions {
  // false = diagnostic mode: the estimators receive the true attack
  // strength instead of its ML estimate.
  bool plug_in_w = true;
};

/// Runs one full protocol round: uplink training with the configured
/// attack, matched-filter precoding, downlink randomness sharing, leakage
/// estimation and key-outcome evaluation for the tracked users.
/// Deterministic in (config.seed, trial_id) for a fixed config.
///
/// The downlink is propagated at the sufficient-statistic level: coupling
/// gains are exact inner products of the realized fading vectors with the
/// realized precoders, sequence cross-correlations are exact, and the
/// projected thermal noise is drawn from its exact law, so every recorded
/// statistic has the same distribution as with materialized N_d-sample
/// receive vectors (the protocol API materializes those for its own tests).
TrialRecord run_trial(const SystemConfig& config, std::uint64_t trial_id,
                      const TrialOptions& opt = {});

/// Reusable-workspace form of run_trial for tight Monte-Carlo loops.
class TrialEngine {
 public:
  explicit TrialEngine(SystemConfig config, TrialOptions opt = {});
  TrialRecord run(std::uint64_t trial_id);
  const SystemConfig& config() const { return cfg_; }

 private:
  SystemConfig cfg_;
  TrialOptions opt_;
  Eigen::MatrixXcd precoders_;     // M x K (holds y, normalized in place)
  Eigen::MatrixXcd h_tracked_;     // M x T
  Eigen::MatrixXcd h_e_tracked_;   // M x T
  std::vector<std::uint64_t> bits_;  // K x words, LSB-first
  Eigen::RowVectorXcd row_bob_, row_eve_;
  std::vector<double> gram_;
};

/// Per-point Monte-Carlo aggregates (sums over tracked users and trials).
struct Aggregate {
  double n = 0;
  double sum_mse_plug = 0, sum_sq_mse_plug = 0;
  double sum_mse_truew = 0, sum_sq_mse_truew = 0;
  double sum_err_g = 0;  // |g_hat - g|^2
  double sum_ge2 = 0;
  double sum_sig_bob = 0, sum_int_bob = 0;
  double sum_sig_eve = 0, sum_int_eve = 0;
  double sum_rs_margin = 0, sum_sq_rs_margin = 0;
  double sum_rs_margin0 = 0, sum_rs_true = 0;
  double sum_pout = 0, sum_sq_pout = 0, n_outage = 0;
  double sum_pout_truew = 0, n_outage_truew = 0;
  double sum_s_hat = 0;
  double sum_i_bob = 0, sum_i_eve_hat = 0, sum_i_eve_true = 0;
  double sum_w_hat = 0, sum_w_true = 0;

  void add(const TrialUser& u);
  void merge(const Aggregate& other);
};

/// Runs `trials` trials on `workers` threads and folds the aggregates in
/// trial order, so the result is identical for any worker count.
Aggregate run_trials_aggregate(const SystemConfig& config, std::uint64_t trials,
                               int workers, const TrialOptions& opt = {},
                               std::uint64_t trial_id_base = 0);

/// Runs trials and keeps every record (raw mode; memory scales with
/// trials x tracked users).
std::vector<TrialRecord> run_trials_collect(const SystemConfig& config,
                                            std::uint64_t trials, int workers,
                                            const TrialOptions& opt = {});

enum class SweepAxis { M, K, N_d, delta, w2_db };

/// One-axis parameter sweep around a base configuration.
struct SweepSpec {
  SystemConfig base;
  SweepAxis axis = SweepAxis::M;
  std::vector<double> values;
  std::uint64_t trials = 10000;
  int workers = 0;  // 0 = hardware concurrency
  bool plug_in_w = true;
};

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);

/// Applies one axis value to a copy of the base config. Sweeping K
/// broadcasts user 0's large-scale parameters to all users.
SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value);

struct SweepRow {
  double value = 0;
  std::uint64_t trials = 0;
  int users_tracked = 0;
  Aggregate agg;
  // analytic overlays evaluated at user 0's parameters
  double sinr_bob_analytic = 0, sinr_eve_analytic = 0;
  double mse_analytic = 0, nmse_analytic = 0, nmse_ideal = 0;
  double mean_ge2_analytic = 0;
  double pout_ub_asymptotic = 0;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Closed-form tables only (no sampling) over the same axis grid.
struct AnalyticRow {
  double value = 0;
  double sinr_bob = 0, sinr_eve = 0, sinr_ratio = 0;
  double mean_ge2 = 0, mse = 0, nmse = 0, nmse_ideal = 0;
  // Marcum bounds at the large-array operating point and the closed-form
  // large-array limit.
  double pout_ub_exp = 0, pout_ub_bessel = 0, pout_ub_asymptotic = 0;
};
std::vector<AnalyticRow> emit_analytics(const SystemConfig& base,
                                        SweepAxis axis,
                                        const std::vector<double>& values);

/// Parses a sweep file: base-config keys plus `axis`, `values`, `trials`
/// (and optional `workers`).
SweepSpec parse_sweep_spec(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

// CSV emission, 9 significant digits, fixed documented column order.
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);
std::string analytic_csv(SweepAxis axis, const std::vector<AnalyticRow>& rows);
std::string trials_csv(const std::vector<TrialRecord>& records);

}  // namespace ska
