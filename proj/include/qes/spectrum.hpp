#pragma once

// Quasi-exact spectrum: the series truncates to a degree-n polynomial only
// when nu = 2n and a_{n+1}(theta) = 0. The second condition pins theta, hence
// varpi = 4 m mu^2 / theta^2, hence the cyclotron frequency
// omega = 2(-Omega +- sqrt(Omega^2 + varpi^2)), and the energy follows from
//
//   E = varpi (n + gamma + 1) - omega l / 2 - Omega l.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "qes/core_model.hpp"
#include "qes/errors.hpp"
#include "qes/heun_series.hpp"
#include "qes/parallel.hpp"
#include "qes/polynomial.hpp"

namespace qes {

enum class Branch { plus, minus };
enum class BranchSelection { plus, minus, both };

inline std::string_view to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

inline bool selects(BranchSelection sel, Branch b) {
  return sel == BranchSelection::both || (sel == BranchSelection::plus) == (b == Branch::plus);
}

/// a_{n+1} at nu = 2n, as a polynomial of degree n+1 in theta.
struct TruncationPolynomial {
  int n = 1;
  double gamma = 0.0;
  Polynomial poly;
};

inline TruncationPolynomial truncation_polynomial(int n, double gamma) {
  if (n < 1) throw InvalidArgument("truncation_polynomial requires n >= 1");
  auto a = coefficient_polynomials(gamma, 2.0 * n, n + 1);
  return {n, gamma, a[static_cast<std::size_t>(n) + 1]};
}

namespace detail {

inline double truncation_residual(int n, double gamma, double theta) {
  return generate_coefficients({gamma, theta, 2.0 * n}, n + 1)[n + 1];
}

/// Refines a polynomial root against the recurrence itself, bisecting to
/// adjacent doubles.
inline double polish_theta(int n, double gamma, double theta) {
  if (theta == 0.0) return theta;
  auto f = [&](double t) { return truncation_residual(n, gamma, t); };
  const double f0 = f(theta);
  if (f0 == 0.0) return theta;
  for (double w = 1e-12; w <= 1e-4; w *= 10.0) {
    const double lo = theta - w * std::abs(theta);
    const double hi = theta + w * std::abs(theta);
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) != (fhi < 0.0)) return bisect(f, lo, hi, flo);
  }
  return theta;
}

}  // namespace detail

/// All real roots of the truncation polynomial, ascending, polished so
/// |a_{n+1}(theta)| sits at rounding level. The set is closed under negation.
inline std::vector<double> theta_roots(const TruncationPolynomial& tp) {
  const int s = (tp.n + 1) % 2;
  // a_{n+1}(theta) = theta^s q(theta^2)
  const auto& c = tp.poly.coefficients();
  std::vector<double> qc;
  for (std::size_t k = static_cast<std::size_t>(s); k < c.size(); k += 2) qc.push_back(c[k]);
  const Polynomial q(std::move(qc));

  std::vector<double> roots;
  if (s == 1) roots.push_back(0.0);
  for (double x : real_roots(q, 0.0, root_bound(q))) {
    if (!(x > 0.0)) continue;
    const double t = detail::polish_theta(tp.n, tp.gamma, std::sqrt(x));
    roots.push_back(t);
    roots.push_back(-t);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// omega on the chosen branch of varpi^2 = omega^2/4 + Omega*omega, written
/// to avoid cancellation.
inline double omega_from_varpi(double varpi, double Omega, Branch branch) {
  const double s = std::hypot(Omega, varpi);
  if (branch == Branch::plus)
    return Omega > 0.0 ? 2.0 * varpi * varpi / (Omega + s) : 2.0 * (s - Omega);
  return Omega < 0.0 ? -2.0 * varpi * varpi / (s - Omega) : -2.0 * (Omega + s);
}

/// E = varpi (n + gamma + 1) - omega l / 2 - Omega l.
inline double energy_level(int n, const ChannelParams& ch) {
  const double l = static_cast<double>(ch.l);
  return ch.varpi * (n + ch.gamma + 1.0) - 0.5 * ch.omega * l - ch.Omega * l;
}

/// The -Omega*l (rotation / angular momentum coupling) part of energy_level.
inline double rotation_coupling_term(const ChannelParams& ch) {
  return -ch.Omega * static_cast<double>(ch.l);
}

struct SpectrumLine {
  int n = 1;
  int l = 0;
  int root_index = 0;  // position among admissible theta roots, ascending |theta|
  double gamma = 0.0;
  double theta_root = 0.0;
  double varpi = 0.0;
  Branch branch = Branch::plus;
  double omega = 0.0;
  double E = 0.0;
  bool terminated = false;

  ChannelParams channel(const PhysicalConfig& config) const {
    return channel_params_with_varpi(config, l, omega, varpi);
  }
};

inline constexpr double kTerminationTolerance = 1e-10;

namespace detail {

inline SpectrumLine make_line(int n, int l, int root_index, double theta, double varpi,
                              Branch branch, const PhysicalConfig& config) {
  SpectrumLine line;
  line.n = n;
  line.l = l;
  line.root_index = root_index;
  line.theta_root = theta;
  line.varpi = varpi;
  line.branch = branch;
  line.omega = omega_from_varpi(varpi, config.Omega, branch);
  const ChannelParams ch = channel_params_with_varpi(config, l, line.omega, varpi);
  line.gamma = ch.gamma;
  line.E = energy_level(n, ch);
  const HeunSeries series = generate_coefficients({ch.gamma, theta, 2.0 * n}, n + 2);
  line.terminated = termination_check(series, n, kTerminationTolerance);
  return line;
}

}  // namespace detail

/// Every quasi-exact line for (n, l): one per admissible theta root and
/// selected branch, ordered by branch then |theta|.
///
/// Admissible roots have the sign of mu (theta = 2 m mu / sqrt(m varpi)).
/// Throws NoAdmissibleRoot when there is none, including mu = 0.
inline std::vector<SpectrumLine> allowed_frequencies(int n, int l, const PhysicalConfig& config,
                                                     BranchSelection sel = BranchSelection::both) {
  config.validate();
  if (n < 1) throw InvalidArgument("allowed_frequencies requires n >= 1");
  const double m = config.mass();
  const double mu = config.mu();
  const double gamma = channel_gamma(l, m, config.tau2());

  std::vector<double> admissible;
  if (mu != 0.0) {
    for (double t : theta_roots(truncation_polynomial(n, gamma)))
      if (t != 0.0 && (t > 0.0) == (mu > 0.0)) admissible.push_back(t);
  }
  if (admissible.empty())
    throw NoAdmissibleRoot("no admissible root for n=" + std::to_string(n) +
                           ", l=" + std::to_string(l) + " (mu=" + std::to_string(mu) + ")");
  std::sort(admissible.begin(), admissible.end(),
            [](double x, double y) { return std::abs(x) < std::abs(y); });

  std::vector<SpectrumLine> lines;
  for (Branch b : {Branch::plus, Branch::minus}) {
    if (!selects(sel, b)) continue;
    for (std::size_t i = 0; i < admissible.size(); ++i) {
      const double t = admissible[i];
      const double varpi = 4.0 * m * mu * mu / (t * t);
      SpectrumLine line = detail::make_line(n, l, static_cast<int>(i), t, varpi, b, config);
      // varpi^2 = omega^2/4 + Omega*omega must reproduce the root's varpi
      const double check = 0.25 * line.omega * line.omega + config.Omega * line.omega;
      const double scale = 0.25 * line.omega * line.omega + std::abs(config.Omega * line.omega);
      if (!(std::abs(check - varpi * varpi) <= 1e-10 * scale))
        throw NonConfiningChannel("branch frequency inconsistent with varpi");
      lines.push_back(line);
    }
  }
  return lines;
}

/// n = 1 line from the explicit ground-state closed forms
///   varpi = 2 m mu^2 / (1 + 2 gamma),
///   E = varpi (gamma + 2) -+ l sqrt(Omega^2 + varpi^2),
/// the second being the Omega-regular rewriting of
///   E = 2 m mu^2 (gamma + 2)/(1 + 2 gamma) -+ Omega l sqrt(1 + 4 m^2 mu^4 / (Omega^2 (1 + 2 gamma)^2)).
/// Upper sign on the plus branch (for Omega > 0).
inline SpectrumLine ground_state_closed_form(int l, const PhysicalConfig& config,
                                             Branch branch = Branch::plus) {
  config.validate();
  const double m = config.mass();
  const double mu = config.mu();
  if (mu == 0.0) throw NoAdmissibleRoot("ground state requires mu != 0");
  const double gamma = channel_gamma(l, m, config.tau2());
  const double p1 = 1.0 + 2.0 * gamma;

  SpectrumLine line;
  line.n = 1;
  line.l = l;
  line.gamma = gamma;
  line.branch = branch;
  line.varpi = 2.0 * m * mu * mu / p1;
  line.theta_root = std::copysign(std::sqrt(2.0 * p1), mu);
  line.omega = omega_from_varpi(line.varpi, config.Omega, branch);
  const double sign = branch == Branch::plus ? 1.0 : -1.0;
  line.E = line.varpi * (gamma + 2.0) - sign * static_cast<double>(l) *
                                            std::hypot(config.Omega, line.varpi);
  const HeunSeries series = generate_coefficients({gamma, line.theta_root, 2.0}, 3);
  line.terminated = termination_check(series, 1, kTerminationTolerance);
  return line;
}

struct ChannelKey {
  int n = 0;
  int l = 0;
  std::string reason;
};

/// Spectrum over n in [n_min, n_max], l in [l_min, l_max]. Channels are
/// evaluated concurrently; the result is ordered by (n, l, branch, |theta|).
/// Channels without admissible roots contribute no lines and are reported
/// through `empty` when given.
inline std::vector<SpectrumLine> spectrum_sweep(int n_min, int n_max, int l_min, int l_max,
                                                const PhysicalConfig& config, BranchSelection sel,
                                                std::vector<ChannelKey>* empty = nullptr) {
  if (n_min < 1 || n_max < n_min) throw InvalidArgument("invalid n range");
  if (l_max < l_min) throw InvalidArgument("invalid l range");
  config.validate();
  const int nl = l_max - l_min + 1;
  const auto count = static_cast<std::size_t>(n_max - n_min + 1) * static_cast<std::size_t>(nl);

  struct Outcome {
    std::vector<SpectrumLine> lines;
    std::string missing;
  };
  auto outcomes = detail::parallel_map<Outcome>(count, [&](std::size_t i) {
    const int n = n_min + static_cast<int>(i) / nl;
    const int l = l_min + static_cast<int>(i) % nl;
    Outcome o;
    try {
      o.lines = allowed_frequencies(n, l, config, sel);
    } catch (const NoAdmissibleRoot& e) {
      o.missing = e.what();
    }
    return o;
  });

  std::vector<SpectrumLine> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto& o = outcomes[i];
    if (o.lines.empty()) {
      if (empty)
        empty->push_back({n_min + static_cast<int>(i) / nl, l_min + static_cast<int>(i) % nl,
                          o.missing});
      continue;
    }
    out.insert(out.end(), o.lines.begin(), o.lines.end());
  }
  return out;
}

}  // namespace qes
