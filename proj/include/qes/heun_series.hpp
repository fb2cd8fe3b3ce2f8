#pragma once

// Frobenius expansion H(r) = sum_k a_k r^k of the biconfluent Heun equation
//
//   H'' + ((2 gamma + 1)/r - 2r) H' + (nu + theta/r) H = 0
//
// normalized by a_0 = 1, with a_1 = -theta/(1 + 2 gamma) and
//
//   a_{k+2} = -(theta a_{k+1} + (nu - 2k) a_k) / ((k + 2)(k + 2 + 2 gamma)).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qes/errors.hpp"
#include "qes/polynomial.hpp"

namespace qes {

struct HeunParams {
  double gamma = 0.0;
  double theta = 0.0;
  double nu = 0.0;

  void validate() const {
    if (!std::isfinite(gamma) || !std::isfinite(theta) || !std::isfinite(nu))
      throw InvalidArgument("Heun parameters must be finite");
    if (!(1.0 + 2.0 * gamma > 0.0)) throw InvalidArgument("Heun series requires 1 + 2*gamma > 0");
  }
};

/// Coefficients a_0..a_K. When `degree` is set the series has been cut to
/// that polynomial degree and evaluates exactly.
struct HeunSeries {
  HeunParams params;
  std::vector<double> coeffs;
  std::optional<int> degree;

  int K() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator[](int k) const { return coeffs.at(static_cast<std::size_t>(k)); }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }
};

inline HeunSeries generate_coefficients(const HeunParams& params, int K) {
  params.validate();
  if (K < 1) throw InvalidArgument("generate_coefficients requires K >= 1");
  const double two_gamma = 2.0 * params.gamma;
  HeunSeries s{params, {}, std::nullopt};
  s.coeffs.reserve(static_cast<std::size_t>(K) + 1);
  s.coeffs.push_back(1.0);
  s.coeffs.push_back(-params.theta / (1.0 + two_gamma));
  for (int k = 0; k + 2 <= K; ++k) {
    const double den = (k + 2.0) * (k + 2.0 + two_gamma);
    const double next =
        -params.theta * s.coeffs[k + 1] / den - (params.nu - 2.0 * k) * s.coeffs[k] / den;
    if (!std::isfinite(next))
      throw SeriesOverflow(k + 2, "Heun coefficient a_" + std::to_string(k + 2) + " overflowed");
    s.coeffs.push_back(next);
  }
  if (!std::isfinite(s.coeffs[1])) throw SeriesOverflow(1, "Heun coefficient a_1 overflowed");
  return s;
}

struct LowCoefficients {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// Explicit a_1, a_2, a_3 written out in terms of (gamma, theta, nu).
inline LowCoefficients closed_form_low_coefficients(const HeunParams& params) {
  params.validate();
  const double g = params.gamma;
  const double t = params.theta;
  const double nu = params.nu;
  const double p1 = 1.0 + 2.0 * g;
  const double p2 = 2.0 + 2.0 * g;
  const double p3 = 3.0 + 2.0 * g;
  LowCoefficients c;
  c.a1 = -t / p1;
  c.a2 = t * t / (2.0 * p2 * p1) - nu / (2.0 * p2);
  c.a3 = -t * t * t / (6.0 * p3 * p2 * p1) + nu * t / (6.0 * p3 * p2) +
         (nu - 2.0) * t / (3.0 * p3 * p1);
  return c;
}

/// Coefficients a_0..a_K as exact polynomials in theta at fixed (gamma, nu).
/// Only powers of theta with the parity of k appear in a_k.
inline std::vector<Polynomial> coefficient_polynomials(double gamma, double nu, int K) {
  HeunParams{gamma, 0.0, nu}.validate();
  if (K < 1) throw InvalidArgument("coefficient_polynomials requires K >= 1");
  std::vector<Polynomial> a;
  a.reserve(static_cast<std::size_t>(K) + 1);
  a.emplace_back(std::vector<double>{1.0});
  a.emplace_back(std::vector<double>{0.0, -1.0 / (1.0 + 2.0 * gamma)});
  for (int k = 0; k + 2 <= K; ++k) {
    const double den = (k + 2.0) * (k + 2.0 + 2.0 * gamma);
    a.push_back(a[k + 1].times_x().scaled(-1.0 / den) + a[k].scaled(-(nu - 2.0 * k) / den));
  }
  return a;
}

/// Keeps a_0..a_n and marks the series as a degree-n polynomial.
inline HeunSeries truncate(const HeunSeries& series, int n) {
  if (n < 0 || n > series.K()) throw InvalidArgument("truncate: degree out of range");
  HeunSeries s{series.params,
               std::vector<double>(series.coeffs.begin(), series.coeffs.begin() + n + 1), n};
  return s;
}

/// True iff nu = 2n and a_{n+1}, a_{n+2} vanish, all relative to
/// max(1, max_k |a_k|).
inline bool termination_check(const HeunSeries& series, int n, double tol) {
  if (n < 0) return false;
  if (series.K() < n + 2) throw InvalidArgument("termination_check needs coefficients up to n+2");
  const double bound = tol * std::max(1.0, series.max_abs_coefficient());
  const double nu_target = 2.0 * n;
  return std::abs(series[n + 1]) <= bound && std::abs(series[n + 2]) <= bound &&
         std::abs(series.params.nu - nu_target) <= tol * std::max(1.0, nu_target);
}

struct SeriesOptions {
  int max_terms = 500;
  double tol = 1e-14;
};

/// Sum_k a_k r^k.
///
/// Terminated series are evaluated exactly by Horner's rule. Otherwise the
/// partial sum over the available coefficients is accepted only when a
/// geometric bound on the remaining tail, taken over pairs of terms (the
/// recurrence steps by two asymptotically), is below tol*max(1, |sum|).
inline double evaluate_H(const HeunSeries& series, double r, double tol = 1e-14) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("evaluate_H requires finite r >= 0");
  if (series.degree) {
    double acc = 0.0;
    for (int k = *series.degree; k >= 0; --k) acc = acc * r + series.coeffs[k];
    return acc;
  }
  const int K = series.K();
  double sum = 0.0;
  double power = 1.0;
  std::vector<double> terms(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    terms[k] = series.coeffs[k] * power;
    sum += terms[k];
    power *= r;
  }
  if (r == 0.0) return sum;
  if (K < 4) throw NotConverged(std::abs(terms[K]), "evaluate_H: too few coefficients");
  const double last_pair = std::abs(terms[K]) + std::abs(terms[K - 1]);
  const double prev_pair = std::abs(terms[K - 2]) + std::abs(terms[K - 3]);
  double tail = 0.0;
  if (last_pair != 0.0) {
    const double ratio = prev_pair > 0.0 ? last_pair / prev_pair : 1.0;
    tail = ratio < 1.0 ? last_pair * ratio / (1.0 - ratio) : INFINITY;
    tail = std::max(tail, last_pair);
  }
  if (!(tail <= tol * std::max(1.0, std::abs(sum))))
    throw NotConverged(tail, "evaluate_H: series tail bound " + std::to_string(tail) +
                                 " exceeds tolerance at r = " + std::to_string(r));
  return sum;
}

/// H(r) for arbitrary parameters, generating as many coefficients as needed
/// (at most opts.max_terms).
inline double evaluate_H(const HeunParams& params, double r, const SeriesOptions& opts = {}) {
  int K = 32;
  for (;;) {
    const HeunSeries s = generate_coefficients(params, K);
    try {
      return evaluate_H(s, r, opts.tol);
    } catch (const NotConverged&) {
      if (K >= opts.max_terms) throw;
      K = std::min(2 * K, opts.max_terms);
    }
  }
}

}  // namespace qes
