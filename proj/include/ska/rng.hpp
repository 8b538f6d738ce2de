#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace ska {

/// Seedable random stream with cheap independent substreams.
///
/// One stream per Monte-Carlo trial: the pair (seed, stream_id) fully
/// determines the sample sequence, so trials can run on any number of
/// workers and still reproduce bit-identically. The core generator is
/// xoshiro256++ seeded through a splitmix64 mix of (seed, stream_id).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via the polar (Marsaglia) method.
  double normal();

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> cnormal(double variance);

  /// Fills `n` i.i.d. CSCG entries, each with E|z|^2 = variance.
  void fill_cscg(std::complex<double>* out, std::size_t n, double variance);

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// i.i.d. CSCG vector of length n with per-entry E|z|^2 = variance.
/// Throws std::invalid_argument for n == 0 or variance <= 0.
std::vector<std::complex<double>> sample_cscg_vector(std::size_t n,
                                                     double variance,
                                                     RngStream& rng);

}  // namespace ska
