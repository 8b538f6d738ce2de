#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "ska/oracles.hpp"
#include "ska/rng.hpp"
#include "ska/secrecy.hpp"
#include "ska/special.hpp"

using namespace ska;
using doctest::Approx;
using cplx = std::complex<double>;

namespace {
SystemConfig sinr_cfg(int m, int k) {
  SystemConfig cfg;
  cfg.M = m;
  cfg.K = k;
  cfg.N_u = std::max(100, k);
  cfg.N_d = 1000;
  cfg.p_u = 10.0;
  cfg.p_d = 100.0;
  cfg.beta.assign(k, 1.0);
  cfg.beta_e.assign(k, 1.0);
  cfg.p_e.assign(k, 0.0);
  return cfg;
}
}  // namespace

TEST_CASE("passive eavesdropper SINR is antenna-independent") {
  for (int m : {50, 500, 5000}) {
    const SinrPair s = sinr_analytic(sinr_cfg(m, 10), 0, 0.0);
    CHECK(s.sinr_eve == Approx(1.0 / 9.0).epsilon(1e-12));
  }
}

TEST_CASE("user SINR closed form at the reference operating point") {
  const SinrPair s = sinr_analytic(sinr_cfg(100, 10), 0, 0.0);
  CHECK(s.sinr_bob == Approx(100001.0 / (1001.0 * 9.01)).epsilon(1e-12));
  CHECK(s.sinr_bob == Approx(11.09).epsilon(1e-3));
}

TEST_CASE("SINR ratio approaches the inverse attack power in a crowded cell") {
  const double w2 = std::pow(10.0, -0.6);
  const SinrPair s = sinr_analytic(sinr_cfg(500, 100), 0, std::sqrt(w2));
  CHECK(s.ratio == Approx(1.0 / w2).epsilon(0.10));
}

TEST_CASE("mutual information endpoints") {
  CHECK(bi_awgn_mutual_information(0.0, 1.0) == 0.0);
  CHECK(bi_awgn_mutual_information(1.0, 1e-12) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(bi_awgn_mutual_information(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bi_awgn_mutual_information(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("mutual information at unit real-projected snr") {
  // |g|^2 / noise_var = 0.5 puts the real-axis channel at snr 1.
  const double mi = bi_awgn_mutual_information(1.0, 2.0);
  CHECK(mi == Approx(0.4862).epsilon(2e-3));
  RngStream rng(21, 0);
  const double mc = bi_awgn_mi_mc_oracle(1.0, 1.0, 1000000, rng);
  CHECK(std::abs(mi - mc) < 2e-3);
}

TEST_CASE("mutual information is monotone in gain and noise") {
  double prev = -1.0;
  for (double g = 0.05; g < 3.0; g *= 1.4) {
    const double mi = bi_awgn_mutual_information(g, 1.0);
    CHECK(mi > prev);
    prev = mi;
  }
  prev = 2.0;
  for (double nv = 0.01; nv < 100.0; nv *= 2.7) {
    const double mi = bi_awgn_mutual_information(0.8, nv);
    CHECK(mi < prev);
    prev = mi;
  }
}

TEST_CASE("key length arithmetic") {
  CHECK(key_length(0.7, 0.7, 1000, 0.0, 0.0) == 0);
  CHECK(key_length(0.4, 0.6, 1000, 0.0, 0.0) == 0);
  CHECK(key_length(1.0, 0.0, 1000, 0.0, 0.0) == 998);
  CHECK(key_length(0.5, 0.4, 1000, 4.0, 8.0) == 82);
}

TEST_CASE("outage probability limits and oracle identity") {
  const cplx ge(0.22, -0.05);
  const double s2 = 4e-4;
  CHECK(outage_probability(ge, ge, s2, 1e9) == 0.0);
  // Estimate at the posterior mean with no margin: Q1(a,a), near one half
  // for a concentrated posterior.
  const double p = outage_probability(ge, ge, 1e-6, 0.0);
  CHECK(p == Approx(0.5).epsilon(0.01));
  for (double delta : {0.0, 0.05, 0.3}) {
    const double got = outage_probability(ge, ge, s2, delta);
    const double want =
        rician_tail_oracle(std::abs(ge), s2, (1.0 + delta) * std::abs(ge));
    CHECK(std::abs(got - want) < 1e-8);
  }
  CHECK_THROWS_AS(outage_probability(ge, ge, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("outage bounds dominate the marcum function") {
  CHECK(marcum_ub_exp(2.0, 2.0) == 1.0);
  CHECK(marcum_ub_exp(2.0, 2.0) >= marcum_q1(2.0, 2.0));
  CHECK_THROWS_AS(marcum_ub_exp(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(marcum_ub_bessel(2.0, 1.0), std::domain_error);
  for (double a = 0.0; a <= 10.0; a += 0.7) {
    for (double d = 0.0; d <= 6.0; d += 0.4) {
      const double q = marcum_q1(a, a + d);
      CHECK(q <= marcum_ub_exp(a, a + d) + 1e-12);
      CHECK(q <= marcum_ub_bessel(a, a + d) + 1e-12);
    }
  }
}

TEST_CASE("asymptotic outage bound behaviour") {
  // Zero margin gives a vacuous bound; the exponent is linear in the array
  // size with negative slope.
  CHECK(outage_bound_asymptotic(1000.0, 0.5, 100, 100, 100.0, 1000, 0.0) == 1.0);
  const double b1 = outage_bound_asymptotic(1000.0, 0.5, 200, 100, 100.0, 1000, 0.1);
  const double b2 = outage_bound_asymptotic(1000.0, 0.5, 400, 100, 100.0, 1000, 0.1);
  const double b3 = outage_bound_asymptotic(1000.0, 0.5, 800, 100, 100.0, 1000, 0.1);
  CHECK(std::log(b2) - std::log(b1) < 0.0);
  CHECK(std::log(b3) - std::log(b2) ==
        Approx(2.0 * (std::log(b2) - std::log(b1))).epsilon(1e-9));
}

TEST_CASE("ideal nmse scaling") {
  // Passive case: the normalizer E|g_e|^2 is itself 1/M, so the ideal
  // normalized error is exactly one (nothing about the eavesdropper gain is
  // learnable beyond its prior).
  SystemConfig cfg = sinr_cfg(400, 10);
  CHECK(nmse_ideal(cfg, 0, 0.0) == Approx(1.0).epsilon(1e-12));
  // Under attack the normalizer is nearly M-independent and the bound
  // halves with a doubled array: exact ratio (M w2c + c + 1)/(2M w2c + c + 1).
  SystemConfig cfg2 = sinr_cfg(800, 10);
  const double w = 0.5;
  const double c = cfg.c(0), w2c = w * w * c;
  const double ratio = (400 * w2c + c + 1) / (800 * w2c + c + 1);
  CHECK(nmse_ideal(cfg2, 0, w) ==
        Approx(ratio * nmse_ideal(cfg, 0, w)).epsilon(1e-12));
  CHECK(ratio == Approx(0.5).epsilon(6e-3));
  // the analytic curve never undercuts the ideal bound
  for (double ww : {0.05, 0.2, 0.5, 1.0}) {
    CHECK(nmse_analytic(cfg, 0, ww) > nmse_ideal(cfg, 0, ww));
  }
}
