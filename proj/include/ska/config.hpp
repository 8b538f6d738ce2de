#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ska {

/// All protocol and attack parameters for one simulated cell.
///
/// Powers are stored as linear ratios to the unit noise variance; the
/// config-file loader accepts them in dB. Per-user arrays have length K
/// (scalars in the file broadcast to all users).
struct SystemConfig {
  int M = 100;              // base-station antennas
  int K = 2;                // users (= eavesdroppers, index-aligned)
  int N_u = 100;            // uplink training length, >= K
  int N_d = 1000;           // downlink random-sequence length
  double p_u = 10.0;        // uplink training power (linear)
  double p_d = 100.0;       // downlink transmit power (linear)
  std::vector<double> beta;    // large-scale gains, Alice->user
  std::vector<double> beta_e;  // large-scale gains, Alice->eavesdropper
  std::vector<double> p_e;     // per-eavesdropper attack power, 0 = passive
  double delta = 0.0;       // secrecy margin
  double a_slack = 0.0;     // privacy-amplification failure exponent
  double b_slack = 0.0;     // privacy-amplification leakage slack
  std::uint64_t seed = 1;

  // Number of leading users whose downlink/estimation pipeline a trial
  // evaluates; channel physics always involves all K users. 0 = all.
  int users_tracked = 0;

  /// Training energy c_k = p_u * beta_k * N_u.
  double c(int k) const;
  /// Effective attack strength w_k = sqrt(p_e_k beta_e_k / (p_u beta_k)).
  double attack_strength(int k) const;
  /// Interference-plus-noise variance per symbol at user k.
  double sigma2_n(int k) const;
  /// Interference variance per symbol at an eavesdropper.
  double sigma2_ne() const;
  /// Thermal-noise variance per symbol after receive normalization.
  double sigma2_z(int k) const;
  int tracked() const { return users_tracked <= 0 ? K : users_tracked; }

  /// Validates invariants (K >= 2, N_u >= K, positive powers, array
  /// lengths). Throws std::invalid_argument with a message on violation.
  /// Logs a warning to stderr for attack strengths above 1.
  void validate() const;
};

/// Computes w = sqrt(p_e * beta_e / (p_u * beta)), 0 encoding passive
/// eavesdropping.
double effective_attack_strength(const SystemConfig& config, int k);

/// Parses a flat key=value config ('#' comments, blank lines ignored).
/// Keys: M, K, N_u, N_d, p_u_db, p_d_db, beta, beta_e, p_e_db | w2_db,
/// delta, a_slack, b_slack, seed, users_tracked. List-valued keys accept
/// comma-separated per-user entries or a scalar broadcast. dB keys accept
/// -inf. Unknown keys are rejected.
SystemConfig parse_config(const std::string& text);

/// Loads and validates a config file. Throws std::runtime_error on I/O
/// failure, std::invalid_argument on bad content.
SystemConfig load_config(const std::string& path);

double db_to_linear(double db);

}  // namespace ska
