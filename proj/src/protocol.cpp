#include "ska/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace ska {

Eigen::VectorXcd mmse_channel_estimate(const Eigen::VectorXcd& y, double c,
                                       double w_assumed) {
  const double scale = std::sqrt(c) / (1.0 + (1.0 + w_assumed * w_assumed) * c);
  return scale * y;
}

Precoder mf_precoder(const Eigen::VectorXcd& h_hat) {
  const double n = h_hat.norm();
  if (!(n > 0.0))
    throw std::invalid_argument("mf_precoder: zero channel estimate");
  return Precoder{h_hat / n};
}

RandomSequence generate_random_sequence(int n_d, RngStream& rng) {
  if (n_d < 1)
    throw std::invalid_argument("generate_random_sequence: N_d must be >= 1");
  RandomSequence s;
  s.bits.resize(static_cast<std::size_t>(n_d));
  s.q.resize(n_d);
  // Bits come from 64-wide draws, LSB first, matching the packed fast path.
  std::uint64_t word = 0;
  for (int i = 0; i < n_d; ++i) {
    if (i % 64 == 0) word = rng.next_u64();
    const auto bit = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    s.bits[static_cast<std::size_t>(i)] = bit;
    s.q(i) = bit ? -1.0 : 1.0;
  }
  return s;
}

DownlinkFrame downlink_transmit(const SystemConfig& config,
                                const ChannelState& ch,
                                const std::vector<Precoder>& precoders,
                                const std::vector<RandomSequence>& seqs,
                                RngStream& rng, const DownlinkOptions& opt) {
  const int M = config.M;
  const int K = config.K;
  const int N_d = config.N_d;
  if (precoders.size() != static_cast<std::size_t>(K) ||
      seqs.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("downlink_transmit: need K precoders and K sequences");
  if (ch.h.rows() != M || ch.h.cols() != K || ch.h_e.rows() != M ||
      ch.h_e.cols() != K)
    throw std::invalid_argument("downlink_transmit: channel state shape mismatch");
  for (const auto& p : precoders)
    if (p.a.size() != M)
      throw std::invalid_argument("downlink_transmit: precoder length mismatch");
  for (const auto& s : seqs)
    if (s.q.size() != N_d)
      throw std::invalid_argument("downlink_transmit: sequence length mismatch");

  DownlinkFrame f;
  f.bits.reserve(static_cast<std::size_t>(K));
  f.q.resize(N_d, K);
  for (int k = 0; k < K; ++k) {
    f.bits.push_back(seqs[static_cast<std::size_t>(k)].bits);
    f.q.col(k) = seqs[static_cast<std::size_t>(k)].q;
  }

  Eigen::MatrixXcd A(M, K);
  for (int k = 0; k < K; ++k) A.col(k) = precoders[static_cast<std::size_t>(k)].a;

  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(M));
  // Coupling gains: gains(k, l) is what user k's receiver sees of the beam
  // steered at user l.
  const Eigen::MatrixXcd gains = (ch.h.adjoint() * A) * inv_sqrt_m;
  const Eigen::MatrixXcd gains_e = (ch.h_e.adjoint() * A) * inv_sqrt_m;

  f.g.resize(K);
  f.g_e.resize(K);
  f.sigma2_n.resize(K);
  f.r.resize(N_d, K);
  f.r_e.resize(N_d, K);
  f.sigma2_ne = config.sigma2_ne();

  const Eigen::MatrixXcd qc = f.q.cast<std::complex<double>>();
  Eigen::VectorXcd z(N_d);
  for (int k = 0; k < K; ++k) {
    f.g(k) = gains(k, k);
    f.g_e(k) = gains_e(k, k);
    f.sigma2_n(k) = config.sigma2_n(k);

    f.r.col(k) = f.g(k) * qc.col(k);
    f.r_e.col(k) = f.g_e(k) * qc.col(k);
    if (opt.interference) {
      for (int l = 0; l < K; ++l) {
        if (l == k) continue;
        f.r.col(k) += gains(k, l) * qc.col(l);
        f.r_e.col(k) += gains_e(k, l) * qc.col(l);
      }
    }
    if (opt.noise) {
      rng.fill_cscg(z.data(), static_cast<std::size_t>(N_d), config.sigma2_z(k));
      f.r.col(k) += z;
    }
  }
  return f;
}

}  // namespace ska
