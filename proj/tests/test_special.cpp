#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <numbers>

#include "ska/oracles.hpp"
#include "ska/special.hpp"

using namespace ska;
using doctest::Approx;

TEST_CASE("bessel i0 basics and frozen values") {
  CHECK(bessel_i0(0.0) == 1.0);
  // 30-term power series value at x = 1.
  CHECK(bessel_i0(1.0) == Approx(1.2660658777520084).epsilon(1e-13));
  CHECK(bessel_i0(-1.0) == bessel_i0(1.0));
  CHECK(bessel_i0(700.0) < std::numeric_limits<double>::infinity());
  CHECK(bessel_i0_scaled(1e6) > 0.0);
}

TEST_CASE("bessel i0 matches the series oracle on a log grid") {
  for (double x = 1e-3; x < 590.0; x *= 1.9) {
    const double want = bessel_i0_series_oracle(x);
    CHECK(bessel_i0(x) == Approx(want).epsilon(1e-12));
    CHECK(bessel_i0_scaled(x) == Approx(want * std::exp(-x)).epsilon(1e-12));
  }
}

TEST_CASE("scaled bessel matches the asymptotic oracle at x = 50") {
  const double want = bessel_i0_scaled_asymptotic_oracle(50.0, 2);
  CHECK(std::abs(bessel_i0_scaled(50.0) - want) / want < 1e-3);
}

TEST_CASE("erfc endpoints, limits and oracle agreement") {
  CHECK(ska::erfc(0.0) == 1.0);
  CHECK(ska::erfc(30.0) == Approx(0.0).epsilon(1e-30));
  CHECK(ska::erfc(-30.0) == Approx(2.0));
  CHECK(ska::erfc(1.0) == Approx(0.157299).epsilon(1e-5));
  for (double x : {-2.5, -0.7, 0.05, 0.3, 0.9, 1.3, 1.7, 2.5, 4.0, 7.0, 15.0}) {
    CHECK(ska::erfc(x) == Approx(erfc_oracle(x)).epsilon(1e-12));
  }
}

TEST_CASE("marcum q1 rejects negative arguments") {
  CHECK_THROWS_AS(marcum_q1(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(marcum_q1(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("marcum q1 closed cases") {
  for (double a : {0.0, 0.5, 3.0, 40.0}) CHECK(marcum_q1(a, 0.0) == 1.0);
  CHECK(marcum_q1(0.0, 1.0) == Approx(std::exp(-0.5)).epsilon(1e-14));
  // Frozen from the independent integration oracle (adaptive tolerance
  // 1e-10); agrees with the direct series evaluation.
  CHECK(marcum_q1(1.0, 2.0) == Approx(0.2690120600731579).epsilon(1e-9));
}

TEST_CASE("marcum q1 matches the integration oracle across branches") {
  // Covers the Poisson-series, Bessel-series (both directions) and
  // quadrature branches, including points hugging the branch cuts.
  const double pts[][2] = {{0.2, 0.4},   {0.9, 1.05},  {1.0, 2.0},
                           {2.0, 1.0},   {5.0, 6.0},   {8.0, 3.0},
                           {10.0, 12.0}, {24.4, 24.5}, {24.6, 24.6},
                           {30.0, 21.0}, {26.0, 27.0}, {40.0, 41.5},
                           {120.0, 121.0}, {0.05, 9.0}, {12.0, 0.02}};
  for (const auto& p : pts) {
    const double got = marcum_q1(p[0], p[1]);
    const double want = marcum_q1_oracle(p[0], p[1]);
    CHECK(std::abs(got - want) <= 1e-10);
  }
}

TEST_CASE("marcum q1 is monotone in each argument") {
  for (double a = 0.0; a <= 6.0; a += 0.75) {
    double prev = 1.0;
    for (double b = 0.0; b <= 8.0; b += 0.5) {
      const double q = marcum_q1(a, b);
      CHECK(q <= prev + 1e-12);
      prev = q;
    }
  }
  for (double b = 0.5; b <= 8.0; b += 0.75) {
    double prev = 0.0;
    for (double a = 0.0; a <= 8.0; a += 0.5) {
      const double q = marcum_q1(a, b);
      CHECK(q >= prev - 1e-12);
      prev = q;
    }
  }
}

TEST_CASE("gauss-hermite two-point rule is the closed form") {
  const Quadrature q = gauss_hermite(2);
  CHECK(q.nodes[0] == Approx(-1.0 / std::numbers::sqrt2).epsilon(1e-14));
  CHECK(q.nodes[1] == Approx(1.0 / std::numbers::sqrt2).epsilon(1e-14));
  CHECK(q.weights[0] == Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(q.weights[1] == Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("gauss-hermite rejects out-of-range orders") {
  CHECK_THROWS_AS(gauss_hermite(1), std::invalid_argument);
  CHECK_THROWS_AS(gauss_hermite(257), std::invalid_argument);
}

TEST_CASE("gauss-hermite weight normalization and moments") {
  for (int n : {8, 64, 96, 256}) {
    const Quadrature q = gauss_hermite(n);
    double sw = 0.0, m2 = 0.0, m8 = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      CHECK(q.weights[i] > 0.0);
      if (i) CHECK(q.nodes[i] > q.nodes[i - 1]);
      sw += q.weights[i];
      m2 += q.weights[i] * q.nodes[i] * q.nodes[i];
      m8 += q.weights[i] * std::pow(q.nodes[i], 8);
    }
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    CHECK(std::abs(sw - sqrt_pi) < 1e-12);
    CHECK(std::abs(m2 - 0.5 * sqrt_pi) < 1e-10);
    // integral t^8 e^{-t^2} dt = sqrt(pi) * 7!! / 2^4
    CHECK(m8 == Approx(sqrt_pi * 105.0 / 16.0).epsilon(1e-10));
  }
}
