#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qes/errors.hpp"

namespace qes {

struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // size() - 1 entries

  std::size_t size() const { return diagonal.size(); }

  void validate() const {
    if (diagonal.empty()) throw InvalidArgument("empty tridiagonal matrix");
    if (off_diagonal.size() + 1 != diagonal.size())
      throw InvalidArgument("off-diagonal must have size() - 1 entries");
  }
};

/// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
inline std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
  constexpr double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = t.diagonal[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == t.size()) break;
    const double e = t.off_diagonal[i];
    q = t.diagonal[i + 1] - x - e * e / q;
  }
  return count;
}

inline void gershgorin_bounds(const SymmetricTridiagonal& t, double& lo, double& hi) {
  lo = INFINITY;
  hi = -INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < t.size()) r += std::abs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - r);
    hi = std::max(hi, t.diagonal[i] + r);
  }
}

/// The `count` smallest eigenvalues, ascending, by Sturm bisection.
///
/// Each value is bisected until its bracket is below tol/4 wide and then
/// certified: exactly one eigenvalue must lie in [lambda - tol, lambda + tol)
/// at the expected index. Otherwise BracketFailure.
inline std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, int count,
                                              double tol = 1e-10) {
  t.validate();
  if (count < 1 || count > 20) throw InvalidArgument("lowest_eigenvalues: count must be in [1, 20]");
  if (static_cast<std::size_t>(count) > t.size())
    throw InvalidArgument("lowest_eigenvalues: count exceeds matrix size");
  if (t.size() == 1) return {t.diagonal[0]};

  double glo, ghi;
  gershgorin_bounds(t, glo, ghi);
  const double pad = std::numeric_limits<double>::epsilon() * std::max(std::abs(glo), std::abs(ghi));
  glo -= pad + tol;
  ghi += pad + tol;

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double lower = glo;
  for (int k = 0; k < count; ++k) {
    double lo = lower;
    double hi = ghi;
    // invariant: sturm_count(lo) <= k < sturm_count(hi)
    while (hi - lo > 0.25 * tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(t, mid) <= static_cast<std::size_t>(k))
        lo = mid;
      else
        hi = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    if (sturm_count(t, lambda - tol) != static_cast<std::size_t>(k) ||
        sturm_count(t, lambda + tol) != static_cast<std::size_t>(k) + 1)
      throw BracketFailure("eigenvalue " + std::to_string(k) + " near " + std::to_string(lambda) +
                           " is not isolated at tolerance " + std::to_string(tol));
    out.push_back(lambda);
    lower = lo;
  }
  return out;
}

namespace detail {

/// Solves (T - shift I) x = b in place with a partially pivoted LU
/// (the dgttrf / dgtts2 scheme). Zero pivots are nudged to keep the solve
/// finite, which is what inverse iteration wants.
inline void shifted_tridiagonal_solve(const SymmetricTridiagonal& t, double shift,
                                      std::vector<double>& b) {
  const std::size_t n = t.size();
  std::vector<double> d(n), dl(t.off_diagonal), du(t.off_diagonal), du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<char> swapped(n, 0);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = t.diagonal[i] - shift;
    norm = std::max(norm, std::abs(t.diagonal[i]));
  }
  const double nudge = std::numeric_limits<double>::epsilon() * std::max(norm, 1.0);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = nudge;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = nudge;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped[i]) {
      b[i + 1] -= dl[i] * b[i];
    } else {
      const double temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - dl[i] * b[i];
    }
  }
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  if (n > 2)
    for (std::size_t i = n - 2; i-- > 0;)
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
}

inline void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
}

}  // namespace detail

/// Unit eigenvector for an (accurately known) eigenvalue by inverse
/// iteration. Sign fixed so the first non-negligible component is positive.
inline std::vector<double> eigenvector(const SymmetricTridiagonal& t, double lambda,
                                       int iterations = 3) {
  t.validate();
  const std::size_t n = t.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(0.7 * static_cast<double>(i));
  detail::normalize(v);
  for (int it = 0; it < iterations; ++it) {
    detail::shifted_tridiagonal_solve(t, lambda, v);
    detail::normalize(v);
  }
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-8 * vmax) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      break;
    }
  }
  return v;
}

/// Sign changes along v, ignoring entries below rel_floor * max|v|.
inline int sign_changes(const std::vector<double>& v, double rel_floor = 1e-8) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  int changes = 0;
  int last = 0;
  for (double x : v) {
    if (std::abs(x) <= rel_floor * vmax) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace qes
