#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qes/wavefunction.hpp"

using Catch::Approx;
using namespace qes;

namespace {
const PhysicalConfig kWorked = PhysicalConfig::from_couplings(1.0, 1.0, 0.0, 1.0);
}

TEST_CASE("ground-state profile", "[wavefunction]") {
  const auto line = allowed_frequencies(1, 1, kWorked, BranchSelection::plus)[0];
  const auto rf = radial_wavefunction(line, kWorked);
  CHECK(rf.poly.degree == 1);
  for (double r = 0.0; r <= 10.0; r += 0.01) {
    const double expected = std::exp(-r * r / 2) * r * (1 - std::sqrt(6.0) * r / 3);
    CHECK(std::abs(rf(r) - expected) <= 1e-12);
  }
  CHECK(rf(0.0) == 0.0);
  CHECK(count_nodes(rf) == 1);
  const double node = 3.0 / std::sqrt(6.0);
  CHECK(node == Approx(1.2247448713915890).epsilon(1e-15));
  CHECK(std::abs(rf.polynomial(node)) <= 1e-15);

  const auto s0 = radial_wavefunction(allowed_frequencies(1, 0, kWorked)[0], kWorked);
  CHECK(s0(0.0) == 1.0);
}

TEST_CASE("radial_wavefunction refuses unterminated lines", "[wavefunction]") {
  auto line = allowed_frequencies(1, 0, kWorked)[0];
  line.terminated = false;
  CHECK_THROWS_AS(radial_wavefunction(line, kWorked), InvalidArgument);
  CHECK_THROWS_AS(make_radial_function(1, 0, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("node counting", "[wavefunction]") {
  const auto constant = make_radial_function(0, 0, 0.0, 0.0);
  CHECK(count_nodes(constant) == 0);

  RadialFunction at_origin = constant;
  at_origin.poly.coeffs = {0.0, 1.0};
  at_origin.poly.degree = 1;
  CHECK(count_nodes(at_origin) == 0);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> um(0.5, 5.0), umu(0.1, 3.0), ut(0.0, 1.0), uO(-2.0, 2.0);
  std::uniform_int_distribution<int> ul(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = PhysicalConfig::from_couplings(um(rng), umu(rng), ut(rng), uO(rng));
    const auto rf = radial_wavefunction(allowed_frequencies(1, ul(rng), c)[0], c);
    CHECK(count_nodes(rf) == 1);
    CHECK(rf.poly.coeffs[1] == Approx(-rf.theta / (1 + 2 * rf.gamma)).epsilon(1e-15));
  }
}

TEST_CASE("sampling", "[wavefunction]") {
  const auto rf = radial_wavefunction(allowed_frequencies(1, 1, kWorked)[0], kWorked);
  const auto pts = sample(rf, 3.0 / std::sqrt(6.0), 3);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].f == 0.0);
  CHECK(std::abs(pts[2].f) <= 1e-15);
  CHECK(pts[1].f > 0.0);
  const auto one = sample(radial_wavefunction(allowed_frequencies(1, 0, kWorked)[0], kWorked), 8.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].r == 0.0);
  CHECK(one[0].f == 1.0);
  CHECK_THROWS_AS(sample(rf, 0.0, 10), InvalidArgument);
  CHECK_THROWS_AS(sample(rf, 5.0, 0), InvalidArgument);
}

TEST_CASE("planar norm", "[wavefunction]") {
  // int_0^inf exp(-r^2) r dr = 1/2
  const auto gauss = make_radial_function(0, 0, 0.0, 0.0);
  CHECK(norm_squared(gauss, 10.0, 4000) == Approx(0.5).epsilon(1e-10));

  // int_0^inf exp(-r^2) r^3 dr = 1/2 for the pure gamma = 1 oscillator
  const auto g1 = make_radial_function(0, 1, 1.0, 0.0);
  CHECK(norm_squared(g1, 10.0, 4000) == Approx(0.5).epsilon(1e-10));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> um(0.5, 5.0), umu(0.1, 3.0), ut(0.0, 1.0), uO(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = PhysicalConfig::from_couplings(um(rng), umu(rng), ut(rng), uO(rng));
    for (int n = 1; n <= 3; ++n) {
      const auto rf = radial_wavefunction(allowed_frequencies(n, 0, c)[0], c);
      const double a = norm_squared(rf, 8.0, 2000);
      const double b = norm_squared(rf, 8.0, 4000);
      CHECK(a > 0.0);
      CHECK(std::abs(a - b) <= 1e-8 * b);
    }
  }
  CHECK_THROWS_AS(norm_squared(gauss, 10.0, 999), InvalidArgument);
  CHECK_THROWS_AS(norm_squared(gauss, -1.0, 1000), InvalidArgument);
}

TEST_CASE("gaussian decay bound", "[wavefunction][property]") {
  for (int n = 1; n <= 4; ++n) {
    for (int l = -2; l <= 2; ++l) {
      const auto rf = radial_wavefunction(allowed_frequencies(n, l, kWorked).back(), kWorked);
      // C = max over [r0, 40] of |f| e^{r^2/4}, measured on a log grid, must be finite
      // and the bound must hold at every sampled point
      double C = 0.0;
      std::vector<double> rs;
      for (double r = 4.0; r <= 40.0; r *= 1.01) rs.push_back(r);
      for (double r : rs) {
        const double p = std::abs(rf.polynomial(r)) * std::pow(r, rf.gamma);
        C = std::max(C, p * std::exp(-r * r / 4));
      }
      CHECK(std::isfinite(C));
      for (double r : rs) CHECK(std::abs(rf(r)) <= C * std::exp(-r * r / 4) * (1 + 1e-12));
      CHECK(std::abs(rf(40.0)) == 0.0);
    }
  }
}
