#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qes/heun_series.hpp"

using Catch::Approx;
using namespace qes;

TEST_CASE("generate_coefficients examples", "[heun]") {
  SECTION("theta = 0, nu = 0 terminates at degree 0") {
    const auto s = generate_coefficients({1.0, 0.0, 0.0}, 4);
    REQUIRE(s.K() == 4);
    CHECK(s[0] == 1.0);
    for (int k = 1; k <= 4; ++k) CHECK(s[k] == 0.0);
  }
  SECTION("gamma = 1, theta = 2, nu = 2") {
    const auto s = generate_coefficients({1.0, 2.0, 2.0}, 2);
    CHECK(s[1] == Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(s[2] == Approx(-1.0 / 12.0).epsilon(1e-15));
  }
  SECTION("n = 1 truncation root at gamma = 0") {
    const auto s = generate_coefficients({0.0, std::sqrt(2.0), 2.0}, 3);
    CHECK(std::abs(s[2]) <= 1e-15);
  }
  SECTION("preconditions and overflow") {
    CHECK_THROWS_AS(generate_coefficients({1.0, 1.0, 1.0}, 0), InvalidArgument);
    CHECK_THROWS_AS(generate_coefficients({-0.5, 1.0, 1.0}, 3), InvalidArgument);
    try {
      generate_coefficients({0.0, 1e200, 0.0}, 5);
      FAIL("expected overflow");
    } catch (const SeriesOverflow& e) {
      CHECK(e.index() == 2);
    }
  }
}

TEST_CASE("closed-form low coefficients", "[heun]") {
  auto c = closed_form_low_coefficients({1.0, 0.0, 4.0});
  CHECK(c.a1 == 0.0);
  // -nu / (2 (2 + 2 gamma)) = -4/8
  CHECK(c.a2 == Approx(-0.5).epsilon(1e-15));
  CHECK(c.a3 == 0.0);
  CHECK(generate_coefficients({1.0, 0.0, 4.0}, 3)[2] == Approx(-0.5).epsilon(1e-15));

  c = closed_form_low_coefficients({1.0, 2.0, 2.0});
  CHECK(c.a2 == Approx(-1.0 / 12.0).epsilon(1e-15));

  for (double g : {0.0, 0.3, 2.0})
    for (double nu : {-1.0, 0.0, 7.5}) CHECK(closed_form_low_coefficients({g, 0.0, nu}).a1 == 0.0);

  // reference values at (0.7, 1.3, 2.9) from exact rational arithmetic
  c = closed_form_low_coefficients({0.7, 1.3, 2.9});
  CHECK(c.a1 == Approx(-0.54166666666666667).epsilon(1e-14));
  CHECK(c.a2 == Approx(-0.32291666666666667).epsilon(1e-14));
  CHECK(c.a3 == Approx(0.068734217171717172).epsilon(1e-14));
}

TEST_CASE("closed forms agree with the recurrence", "[heun][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ug(0.0, 5.0), ut(-10.0, 10.0), unu(-10.0, 20.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const HeunParams p{ug(rng), ut(rng), unu(rng)};
    const auto s = generate_coefficients(p, 3);
    const auto c = closed_form_low_coefficients(p);
    const double g = p.gamma, t = p.theta, nu = p.nu;
    // magnitudes of the individual summands of each closed form
    const double s2 = t * t / (2 * (2 + 2 * g) * (1 + 2 * g)) + std::abs(nu) / (2 * (2 + 2 * g));
    const double s3 = std::abs(t * t * t) / (6 * (3 + 2 * g) * (2 + 2 * g) * (1 + 2 * g)) +
                      std::abs(nu * t) / (6 * (3 + 2 * g) * (2 + 2 * g)) +
                      std::abs((nu - 2) * t) / (3 * (3 + 2 * g) * (1 + 2 * g));
    CHECK(std::abs(s[1] - c.a1) <= 1e-14 * std::abs(c.a1));
    CHECK(std::abs(s[2] - c.a2) <= 1e-14 * s2);
    CHECK(std::abs(s[3] - c.a3) <= 1e-14 * s3);
  }
}

TEST_CASE("parity in theta", "[heun][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ug(0.0, 4.0), ut(-8.0, 8.0), unu(-4.0, 24.0);
  for (int trial = 0; trial < 300; ++trial) {
    const HeunParams p{ug(rng), ut(rng), unu(rng)};
    const auto plus = generate_coefficients(p, 40);
    const auto minus = generate_coefficients({p.gamma, -p.theta, p.nu}, 40);
    for (int k = 0; k <= 40; ++k) CHECK(minus[k] == (k % 2 ? -plus[k] : plus[k]));
  }
  // structural: a_k(theta) only carries powers of the parity of k
  for (double g : {0.0, 0.5, 1.0, 2.7})
    for (int n = 0; n <= 10; ++n) {
      const auto polys = coefficient_polynomials(g, 2.0 * n, n + 1);
      for (int k = 0; k <= n + 1; ++k) {
        const auto& c = polys[static_cast<std::size_t>(k)].coefficients();
        CHECK(static_cast<int>(c.size()) - 1 <= k);
        for (std::size_t j = 0; j < c.size(); ++j)
          if ((static_cast<int>(j) - k) % 2 != 0) CHECK(c[j] == 0.0);
      }
    }
}

TEST_CASE("coefficient polynomials evaluate to the recurrence", "[heun]") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ug(0.0, 3.0), ut(-5.0, 5.0), unu(0.0, 12.0);
  for (int trial = 0; trial < 100; ++trial) {
    const HeunParams p{ug(rng), ut(rng), unu(rng)};
    const auto polys = coefficient_polynomials(p.gamma, p.nu, 12);
    const auto s = generate_coefficients(p, 12);
    for (int k = 0; k <= 12; ++k) {
      const auto& poly = polys[static_cast<std::size_t>(k)];
      CHECK(std::abs(poly(p.theta) - s[k]) <= 1e-12 * std::max(1e-300, poly.magnitude(p.theta)));
    }
  }
}

TEST_CASE("evaluate_H", "[heun]") {
  const auto s = generate_coefficients({0.0, 1.0, 2.0}, 10);
  CHECK(evaluate_H(s, 0.0) == 1.0);

  const auto root = truncate(generate_coefficients({0.0, std::sqrt(2.0), 2.0}, 3), 1);
  CHECK(root.degree == 1);
  CHECK(evaluate_H(root, 1.0) == Approx(1.0 - std::sqrt(2.0)).epsilon(1e-15));

  const auto g1 = truncate(generate_coefficients({1.0, std::sqrt(6.0), 2.0}, 3), 1);
  CHECK(std::abs(evaluate_H(g1, 3.0 / std::sqrt(6.0))) <= 1e-15);

  CHECK_THROWS_AS(evaluate_H(s, -1.0), InvalidArgument);
}

TEST_CASE("evaluate_H on non-terminating series", "[heun]") {
  const HeunParams p{0.7, 1.3, 2.9};
  // partial sums of the exact rational recurrence at 40 digits
  CHECK(evaluate_H(p, 1.5) == Approx(-0.37268758086530984503).epsilon(1e-13));
  CHECK(evaluate_H(p, 4.0) == Approx(95.438971553992026942).epsilon(1e-12));

  // too few coefficients: explicit tail failure, not silent truncation
  CHECK_THROWS_AS(evaluate_H(generate_coefficients(p, 10), 4.0), NotConverged);
  CHECK_THROWS_AS(evaluate_H(p, 30.0, SeriesOptions{64, 1e-14}), NotConverged);
}

TEST_CASE("evaluate_H satisfies the Heun equation", "[heun]") {
  // central differences of the series against the differential equation
  const HeunParams p{0.7, 1.3, 2.9};
  const double h = 1e-3;
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    const double hm = evaluate_H(p, r - h), h0 = evaluate_H(p, r), hp = evaluate_H(p, r + h);
    const double d1 = (hp - hm) / (2 * h);
    const double d2 = (hp - 2 * h0 + hm) / (h * h);
    const double residual =
        d2 + ((2 * p.gamma + 1) / r - 2 * r) * d1 + (p.nu + p.theta / r) * h0;
    const double scale = std::abs(d2) + std::abs(((2 * p.gamma + 1) / r + 2 * r) * d1) +
                         std::abs((p.nu + p.theta / r) * h0);
    CHECK(std::abs(residual) <= 1e-5 * scale);
  }
}

TEST_CASE("termination_check", "[heun]") {
  CHECK(termination_check(generate_coefficients({0.0, std::sqrt(2.0), 2.0}, 3), 1, 1e-12));
  const auto off = generate_coefficients({0.0, 1.0, 2.0}, 3);
  CHECK(off[2] == Approx(-0.25).epsilon(1e-15));
  CHECK_FALSE(termination_check(off, 1, 1e-12));
  CHECK(termination_check(generate_coefficients({0.0, 0.0, 0.0}, 2), 0, 1e-12));
  // a_2 = 0 but nu != 2n: not a polynomial of degree 1
  CHECK_FALSE(termination_check(generate_coefficients({0.0, std::sqrt(2.0), 2.0}, 4), 2, 1e-12));
  CHECK_THROWS_AS(termination_check(generate_coefficients({0.0, 1.0, 2.0}, 2), 1, 1e-12),
                  InvalidArgument);
}
