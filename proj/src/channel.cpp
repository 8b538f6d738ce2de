#include "ska/channel.hpp"

#include <cmath>

namespace ska {

ChannelState generate_channels(const SystemConfig& config, RngStream& rng) {
  config.validate();
  ChannelState ch;
  ch.h.resize(config.M, config.K);
  ch.h_e.resize(config.M, config.K);
  for (int k = 0; k < config.K; ++k)
    rng.fill_cscg(ch.h.col(k).data(), static_cast<std::size_t>(config.M), 1.0);
  for (int k = 0; k < config.K; ++k)
    rng.fill_cscg(ch.h_e.col(k).data(), static_cast<std::size_t>(config.M), 1.0);
  return ch;
}

UplinkObservation uplink_observation(const SystemConfig& config,
                                     const ChannelState& ch, RngStream& rng,
                                     const UplinkOptions& opt) {
  UplinkObservation obs;
  obs.y.resize(config.M, config.K);
  obs.zeta.resize(config.K);
  obs.c.resize(config.K);
  Eigen::VectorXcd u(config.M);
  for (int k = 0; k < config.K; ++k) {
    const double ck = config.c(k);
    const double wk = config.attack_strength(k);
    obs.c(k) = ck;
    obs.y.col(k) = std::sqrt(ck) * (ch.h.col(k) + wk * ch.h_e.col(k));
    if (opt.noise) {
      rng.fill_cscg(u.data(), static_cast<std::size_t>(config.M), 1.0);
      obs.y.col(k) += u;
    }
    obs.zeta(k) = obs.y.col(k).norm();
  }
  return obs;
}

}  // namespace ska
