#include "ska/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ska {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t x = seed;
  (void)splitmix64(x);
  x ^= 0x632BE59BD9B4E019ull + 0x9E3779B97F4A7C15ull * stream_id;
  bool all_zero = true;
  for (auto& s : state_) {
    s = splitmix64(x);
    all_zero = all_zero && s == 0;
  }
  if (all_zero) state_[0] = 1;  // xoshiro must not start from the zero state
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * f;
  has_cached_normal_ = true;
  return u * f;
}

std::complex<double> RngStream::cnormal(double variance) {
  // One accepted polar pair yields both quadratures.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-variance * std::log(s) / s);
  return {u * f, v * f};
}

void RngStream::fill_cscg(std::complex<double>* out, std::size_t n,
                          double variance) {
  for (std::size_t i = 0; i < n; ++i) out[i] = cnormal(variance);
}

std::vector<std::complex<double>> sample_cscg_vector(std::size_t n,
                                                     double variance,
                                                     RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_cscg_vector: n must be >= 1");
  if (!(variance > 0.0))
    throw std::invalid_argument("sample_cscg_vector: variance must be > 0");
  std::vector<std::complex<double>> v(n);
  rng.fill_cscg(v.data(), n, variance);
  return v;
}

}  // namespace ska
