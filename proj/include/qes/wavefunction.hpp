#pragma once

// Radial bound states f(r) = exp(-r^2/2) r^gamma H(r) with H the terminated
// Heun polynomial, in the dimensionless coordinate r = sqrt(m varpi) rho.
// Profiles keep the a_0 = 1 normalization; norm_squared gives the planar
// norm separately. The stationary phase exp(-iEt) exp(il phi) is implied.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qes/core_model.hpp"
#include "qes/errors.hpp"
#include "qes/heun_series.hpp"
#include "qes/polynomial.hpp"
#include "qes/spectrum.hpp"

namespace qes {

struct RadialSample {
  double r = 0.0;
  double f = 0.0;
};

struct RadialFunction {
  int n = 0;
  int l = 0;
  double gamma = 0.0;
  double theta = 0.0;
  HeunSeries poly;  // terminated at degree n
  std::vector<RadialSample> samples;

  double polynomial(double r) const { return evaluate_H(poly, r); }

  double operator()(double r) const {
    if (!(r >= 0.0)) throw InvalidArgument("radial function needs r >= 0");
    return std::exp(-0.5 * r * r) * std::pow(r, gamma) * polynomial(r);
  }
};

/// Builds the profile from explicit (n, gamma, theta); refuses parameters
/// whose series does not terminate at degree n.
inline RadialFunction make_radial_function(int n, int l, double gamma, double theta) {
  if (n < 0) throw InvalidArgument("radial function requires n >= 0");
  const HeunSeries series = generate_coefficients({gamma, theta, 2.0 * n}, n + 2);
  if (!termination_check(series, n, kTerminationTolerance))
    throw InvalidArgument("series does not terminate at degree " + std::to_string(n));
  return {n, l, gamma, theta, truncate(series, n), {}};
}

inline RadialFunction radial_wavefunction(const SpectrumLine& line, const PhysicalConfig& config) {
  if (!line.terminated)
    throw InvalidArgument("radial_wavefunction: line (n=" + std::to_string(line.n) +
                          ", l=" + std::to_string(line.l) + ") is not terminated");
  const double gamma = channel_gamma(line.l, config.mass(), config.tau2());
  return make_radial_function(line.n, line.l, gamma, line.theta_root);
}

/// `count` uniform samples on [0, r_max], endpoints included (count = 1
/// samples r = 0 only).
inline std::vector<RadialSample> sample(const RadialFunction& rf, double r_max, int count) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw InvalidArgument("r_max must be positive");
  if (count < 1) throw InvalidArgument("sample count must be >= 1");
  std::vector<RadialSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double r = count == 1 ? 0.0 : r_max * i / (count - 1);
    out.push_back({r, rf(r)});
  }
  return out;
}

/// Distinct strictly positive real roots of the polynomial part.
inline int count_nodes(const RadialFunction& rf) {
  const Polynomial p(rf.poly.coeffs);
  if (p.degree() < 1) return 0;
  int count = 0;
  for (double x : real_roots(p, 0.0, root_bound(p)))
    if (x > 0.0) ++count;
  return count;
}

namespace detail {

/// Composite Simpson for int_0^{r_max} f(r)^2 r dr after r = s^2, which
/// smooths the r^(2 gamma + 1) behaviour at the origin.
template <class F>
double planar_norm_simpson(const F& f, double r_max, int intervals) {
  const double s_max = std::sqrt(r_max);
  const double h = s_max / intervals;
  auto g = [&](double s) {
    const double r = s * s;
    const double v = f(r);
    return v * v * r * 2.0 * s;
  };
  double acc = g(0.0) + g(s_max);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(i * h);
  return acc * h / 3.0;
}

}  // namespace detail

/// int_0^{r_max} |f(r)|^2 r dr, checked against the estimate on a doubled
/// grid (relative agreement 1e-8). Returns the finer estimate.
template <class F>
double planar_norm(const F& f, double r_max, int N, double rel_tol = 1e-8) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw InvalidArgument("r_max must be positive");
  if (N < 1000) throw InvalidArgument("norm integration needs N >= 1000");
  const int coarse_n = N + (N % 2);
  const double coarse = detail::planar_norm_simpson(f, r_max, coarse_n);
  const double fine = detail::planar_norm_simpson(f, r_max, 2 * coarse_n);
  const double diff = std::abs(fine - coarse);
  if (!(diff <= rel_tol * std::abs(fine)))
    throw NotConverged(diff, "norm integral not converged: |I_2N - I_N| = " + std::to_string(diff));
  return fine;
}

inline double norm_squared(const RadialFunction& rf, double r_max, int N) {
  return planar_norm([&](double r) { return rf(r); }, r_max, N);
}

}  // namespace qes
