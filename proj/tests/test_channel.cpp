#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ska/channel.hpp"

using namespace ska;
using doctest::Approx;

namespace {
SystemConfig small_cfg(int m, int k, double w2 = 0.0) {
  SystemConfig cfg;
  cfg.M = m;
  cfg.K = k;
  cfg.N_u = std::max(100, k);
  cfg.N_d = 16;
  cfg.p_u = 10.0;
  cfg.p_d = 100.0;
  cfg.beta.assign(k, 1.0);
  cfg.beta_e.assign(k, 1.0);
  cfg.p_e.assign(k, w2 * cfg.p_u);
  cfg.seed = 31;
  return cfg;
}
}  // namespace

TEST_CASE("channel block has the contracted shape") {
  RngStream rng(3, 0);
  const ChannelState ch = generate_channels(small_cfg(1, 2), rng);
  CHECK(ch.h.rows() == 1);
  CHECK(ch.h.cols() == 2);
  CHECK(ch.h_e.rows() == 1);
  CHECK(ch.h_e.cols() == 2);
}

TEST_CASE("channel norms concentrate at large antenna counts") {
  RngStream rng(17, 0);
  const ChannelState ch = generate_channels(small_cfg(10000, 2), rng);
  for (int k = 0; k < 2; ++k) {
    CHECK(ch.h.col(k).squaredNorm() / 1e4 > 0.97);
    CHECK(ch.h.col(k).squaredNorm() / 1e4 < 1.03);
  }
}

TEST_CASE("channel generation is reproducible for a fixed stream") {
  RngStream a(5, 2), b(5, 2);
  const ChannelState ca = generate_channels(small_cfg(64, 3), a);
  const ChannelState cb = generate_channels(small_cfg(64, 3), b);
  CHECK((ca.h - cb.h).norm() == 0.0);
  CHECK((ca.h_e - cb.h_e).norm() == 0.0);
}

TEST_CASE("noise-free passive uplink is an exact scaling") {
  const SystemConfig cfg = small_cfg(32, 2);
  RngStream rng(7, 0);
  const ChannelState ch = generate_channels(cfg, rng);
  const UplinkObservation obs =
      uplink_observation(cfg, ch, rng, UplinkOptions{false});
  const Eigen::VectorXcd want = std::sqrt(cfg.c(0)) * ch.h.col(0);
  CHECK((obs.y.col(0) - want).norm() == 0.0);
  CHECK(obs.zeta(0) == obs.y.col(0).norm());
}

TEST_CASE("training-statistic energy matches the variance sum") {
  // E ||y||^2 / M = 1 + (1 + w^2) c, checked for the passive and the
  // symmetric-attack cases.
  for (double w : {0.0, 1.0}) {
    const SystemConfig cfg = small_cfg(256, 2, w * w);
    double acc = 0.0;
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(t));
      const ChannelState ch = generate_channels(cfg, rng);
      const UplinkObservation obs = uplink_observation(cfg, ch, rng);
      acc += obs.y.col(0).squaredNorm() / cfg.M;
    }
    const double want = 1.0 + (1.0 + w * w) * cfg.c(0);
    // Relative sd of the estimate is ~ sqrt(2/(M trials)) for w = 0.
    CHECK(acc / trials == Approx(want).epsilon(0.02));
  }
}

TEST_CASE("normalized training strength approaches its limit as M grows") {
  const double c = 1000.0;
  double dev_small = 0.0, dev_large = 0.0;
  for (int t = 0; t < 50; ++t) {
    for (int pass = 0; pass < 2; ++pass) {
      const int m = pass == 0 ? 64 : 4096;
      SystemConfig cfg = small_cfg(m, 2);
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(100 + t));
      const ChannelState ch = generate_channels(cfg, rng);
      const UplinkObservation obs = uplink_observation(cfg, ch, rng);
      const double dev =
          std::abs(obs.zeta(0) / std::sqrt(static_cast<double>(m)) -
                   std::sqrt(1.0 + c));
      (pass == 0 ? dev_small : dev_large) += dev;
    }
  }
  // Deviation scales like 1/sqrt(M): a 64x antenna ratio gives ~8x.
  CHECK(dev_large < dev_small / 4.0);
}

TEST_CASE("pilot-matrix reduction: correlating the training block against an "
          "orthonormal pilot reproduces the per-user statistic") {
  // Build the full M x N_u received block with +-1/sqrt(N_u) orthogonal
  // pilots (order-4 Hadamard), then project; must equal the directly
  // simulated statistic to rounding with the same channel and noise draws.
  const int m = 16, k_users = 4, n_u = 4;
  SystemConfig cfg = small_cfg(m, k_users, 0.25);
  cfg.N_u = n_u;
  RngStream rng(9, 0);
  const ChannelState ch = generate_channels(cfg, rng);
  Eigen::MatrixXd psi(k_users, n_u);
  psi << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  psi /= 2.0;  // rows orthonormal
  Eigen::MatrixXcd noise(m, n_u);
  for (int j = 0; j < n_u; ++j)
    rng.fill_cscg(noise.col(j).data(), m, 1.0);
  Eigen::MatrixXcd block = noise;
  for (int k = 0; k < k_users; ++k) {
    const double wk = cfg.attack_strength(k);
    block += std::sqrt(cfg.c(k)) *
             ((ch.h.col(k) + wk * ch.h_e.col(k)) * psi.row(k));
  }
  for (int k = 0; k < k_users; ++k) {
    const Eigen::VectorXcd y_k =
        block * psi.row(k).transpose().cast<std::complex<double>>();
    const Eigen::VectorXcd u_k =
        noise * psi.row(k).transpose().cast<std::complex<double>>();
    const Eigen::VectorXcd want =
        std::sqrt(cfg.c(k)) *
            (ch.h.col(k) + cfg.attack_strength(k) * ch.h_e.col(k)) +
        u_k;
    CHECK((y_k - want).norm() < 1e-12);
  }
}
