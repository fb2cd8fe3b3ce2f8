#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace qes {

/// Dense real polynomial, coefficients stored in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const std::vector<double>& coefficients() const { return c_; }

  double coefficient(std::size_t power) const {
    return power < c_.size() ? c_[power] : 0.0;
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Sum of |c_k x^k|; the natural scale for judging a residual at x.
  double magnitude(double x) const {
    double acc = 0.0;
    const double ax = std::abs(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ax + std::abs(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
  }

  Polynomial times_x() const {
    if (c_.empty()) return {};
    std::vector<double> d(c_.size() + 1, 0.0);
    std::copy(c_.begin(), c_.end(), d.begin() + 1);
    return Polynomial(std::move(d));
  }

  Polynomial scaled(double s) const {
    std::vector<double> d = c_;
    for (double& v : d) v *= s;
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> d(std::max(p.c_.size(), q.c_.size()), 0.0);
    for (std::size_t k = 0; k < p.c_.size(); ++k) d[k] += p.c_[k];
    for (std::size_t k = 0; k < q.c_.size(); ++k) d[k] += q.c_[k];
    return Polynomial(std::move(d));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }

  std::vector<double> c_;
};

/// Cauchy bound: every root satisfies |x| <= bound.
inline double root_bound(const Polynomial& p) {
  if (p.degree() < 1) return 0.0;
  const auto& c = p.coefficients();
  const double lead = std::abs(c.back());
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, std::abs(c[k]) / lead);
  return 1.0 + m;
}

namespace detail {

/// Bisects a sign change of f on [lo, hi] down to adjacent doubles.
template <class F>
double bisect(const F& f, double lo, double hi, double flo) {
  for (int it = 0; it < 4000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// All distinct real roots of p in [lo, hi], ascending.
///
/// Roots are isolated recursively: the real roots of p' split [lo, hi] into
/// monotone pieces, and each piece holding a sign change is bisected to
/// machine precision. A critical point where p vanishes to rounding level is
/// reported as a (multiple) root.
inline std::vector<double> real_roots(const Polynomial& p, double lo, double hi) {
  std::vector<double> roots;
  if (p.degree() < 1 || !(lo <= hi)) return roots;
  if (p.degree() == 1) {
    const double x = -p.coefficient(0) / p.coefficient(1);
    if (x >= lo && x <= hi) roots.push_back(x);
    return roots;
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const std::vector<double> crit = real_roots(p.derivative(), lo, hi);
  std::vector<double> pts;
  pts.reserve(crit.size() + 2);
  pts.push_back(lo);
  for (double x : crit)
    if (x > lo && x < hi) pts.push_back(x);
  pts.push_back(hi);

  auto near_zero = [&](double x) {
    return std::abs(p(x)) <= 8.0 * eps * p.magnitude(x);
  };

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    const double fa = p(a);
    const double fb = p(b);
    const bool interior_crit = i > 0;
    if (fa == 0.0 || (interior_crit && near_zero(a))) {
      roots.push_back(a);
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) roots.push_back(detail::bisect(p, a, b, fa));
  }
  if (p(hi) == 0.0) roots.push_back(hi);

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double x : roots) {
    if (!unique.empty() && std::abs(x - unique.back()) <= 4.0 * eps * std::max(1.0, std::abs(x)))
      continue;
    unique.push_back(x);
  }
  return unique;
}

}  // namespace qes
