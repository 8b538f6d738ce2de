#pragma once

#include <string>
#include <vector>

#include "ska/config.hpp"

namespace ska {

/// Tolerances and hooks for the oracle-verification suite. The
/// `mse_formula_scale` knob deliberately corrupts the closed-form MSE inside
/// the corresponding check; anything but 1.0 must make that check fail
/// (mutation-sensitivity fixture for the tests).
struct VerifyOptions {
  std::uint64_t mc_trials = 4000;      // Monte-Carlo trials per statistical check
  std::uint64_t mi_samples = 1000000;  // samples for the MI oracle
  int workers = 0;
  double tol_marcum = 5e-9;
  double tol_bessel_rel = 1e-12;
  double tol_erfc_rel = 1e-12;
  double tol_mi_abs = 2e-3;
  double tol_mean_rel = 0.03;   // relative tolerance on MC means vs closed forms
  double tol_sinr_rel = 0.02;
  double tol_slope = 0.05;
  double mse_formula_scale = 1.0;

  /// Applies "tol_<name>=<value>" or "<name>=<value>" overrides.
  void set(const std::string& name, double value);
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::string to_string() const;  // one line per check
};

/// Runs every brute-force oracle against its closed form at the given
/// configuration scale. Failures are report entries, never exceptions.
VerifyReport verify_oracles(const SystemConfig& config,
                            const VerifyOptions& opt = {});

}  // namespace ska
