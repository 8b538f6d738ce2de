#pragma once

#include <Eigen/Dense>

#include "ska/config.hpp"
#include "ska/rng.hpp"

namespace ska {

/// One coherence block of small-scale fading: column k of `h` is user k's
/// channel, column k of `h_e` the k-th eavesdropper's. Entries are i.i.d.
/// unit-variance CSCG.
struct ChannelState {
  Eigen::MatrixXcd h;    // M x K
  Eigen::MatrixXcd h_e;  // M x K
};

/// Per-user uplink training sufficient statistics.
///
/// y_k = sqrt(c_k) (h_k + w_k h^e_k) + u_k with u_k ~ CN(0, I_M); under
/// orthonormal pilots this carries everything the full received training
/// block knows about user k, so the block itself is never materialized.
struct UplinkObservation {
  Eigen::MatrixXcd y;       // M x K
  Eigen::VectorXd zeta;     // ||y_k||
  Eigen::VectorXd c;        // training energies c_k
};

/// Draws the 2K fading vectors for one coherence block. Column order:
/// users first (h), then eavesdroppers (h_e), each k ascending.
ChannelState generate_channels(const SystemConfig& config, RngStream& rng);

struct UplinkOptions {
  bool noise = true;  // test hook: false drops u_k
};

UplinkObservation uplink_observation(const SystemConfig& config,
                                     const ChannelState& ch, RngStream& rng,
                                     const UplinkOptions& opt = {});

}  // namespace ska
