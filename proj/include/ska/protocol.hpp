#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "ska/channel.hpp"
#include "ska/config.hpp"
#include "ska/rng.hpp"

namespace ska {

/// Unit-norm matched-filter beamforming vector.
struct Precoder {
  Eigen::VectorXcd a;
};

/// One downlink randomness-sharing transmission for all K users.
///
/// Received vectors are normalized by sqrt(p_d beta_k M); the eavesdropper
/// side is noiseless by construction, impaired only by inter-user
/// interference.
struct DownlinkFrame {
  std::vector<std::vector<std::uint8_t>> bits;  // K x N_d source bits
  Eigen::MatrixXd q;        // N_d x K, BPSK symbols in {-1,+1}
  Eigen::VectorXcd g;       // effective downlink gains at users
  Eigen::VectorXcd g_e;     // effective downlink gains at eavesdroppers
  Eigen::MatrixXcd r;       // N_d x K, received at users
  Eigen::MatrixXcd r_e;     // N_d x K, received at eavesdroppers
  Eigen::VectorXd sigma2_n; // interference-plus-noise variance per user
  double sigma2_ne = 0.0;   // interference variance at an eavesdropper
};

/// Linear MMSE channel estimate from the training sufficient statistic:
/// h_hat = sqrt(c) / (1 + (1 + w^2) c) * y. Alice's production path always
/// assumes w = 0 (she cannot see the attack).
Eigen::VectorXcd mmse_channel_estimate(const Eigen::VectorXcd& y, double c,
                                       double w_assumed = 0.0);

/// Matched-filter precoder a = h_hat / ||h_hat||. Because the MMSE estimate
/// is a positive scalar multiple of y, this equals y / ||y|| exactly.
/// Throws std::invalid_argument on (numerically) zero input.
Precoder mf_precoder(const Eigen::VectorXcd& h_hat);

struct RandomSequence {
  std::vector<std::uint8_t> bits;  // N_d source bits
  Eigen::VectorXd q;               // q_i = 1 - 2 bit_i
};

/// i.i.d. uniform bits mapped to BPSK; q'q = N_d exactly.
RandomSequence generate_random_sequence(int n_d, RngStream& rng);

struct DownlinkOptions {
  bool noise = true;         // test hook: false drops thermal noise at users
  bool interference = true;  // test hook: false drops inter-user terms
};

/// Simulates the downlink transmission exactly from the realized channels:
/// g_k and the inter-user coupling gains are inner products of the fading
/// vectors with the unit precoders (conjugated channel side, the form under
/// which the matched beam adds coherently), interference is the realized
/// sum over the other users' sequences, and user noise is CN with variance
/// 1/(p_d beta_k M) per symbol.
DownlinkFrame downlink_transmit(const SystemConfig& config,
                                const ChannelState& ch,
                                const std::vector<Precoder>& precoders,
                                const std::vector<RandomSequence>& seqs,
                                RngStream& rng,
                                const DownlinkOptions& opt = {});

}  // namespace ska
