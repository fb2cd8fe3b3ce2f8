#pragma once

// Laboratory parameters of a polarizable neutral particle in crossed fields
// with a Kratzer potential, seen from a frame rotating about z, and their map
// onto the dimensionless radial problem
//
//   f'' + f'/r - gamma^2 f/r^2 - r^2 f + theta f/r + lambda f = 0,
//   r = sqrt(m varpi) rho,  lambda = beta/(m varpi).
//
// Natural units (hbar = c = 1). The alpha E^2/2 term is not modelled and the
// axial wavenumber is fixed to zero.

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "qes/errors.hpp"

namespace qes {

namespace detail {

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be finite");
}

}  // namespace detail

/// m = M + alpha*B0^2.
inline double effective_mass(double M, double alpha, double B0) {
  detail::require_finite(M, "M");
  detail::require_finite(alpha, "alpha");
  detail::require_finite(B0, "B0");
  if (!(M > 0.0)) throw InvalidArgument("bare mass M must be positive");
  if (alpha < 0.0) throw InvalidArgument("polarizability alpha must be non-negative");
  return M + alpha * B0 * B0;
}

/// omega = alpha*chi*B0/m, the Landau-type cyclotron frequency.
inline double cyclotron_frequency(double alpha, double chi, double B0, double m) {
  detail::require_finite(alpha, "alpha");
  detail::require_finite(chi, "chi");
  detail::require_finite(B0, "B0");
  detail::require_finite(m, "m");
  if (!(m > 0.0)) throw InvalidArgument("effective mass must be positive");
  return alpha * chi * B0 / m;
}

/// Laboratory inputs.
///
/// The Kratzer potential V = -2Da/rho + Da^2/rho^2 enters only through
/// mu = 2Da and tau2 = Da^2. Since those are tied together by (D, a), the
/// couplings may also be given directly (mu_override, tau2_override), which
/// is the only way to express e.g. mu > 0 with tau2 = 0. Likewise
/// m_effective replaces M + alpha*B0^2 when set.
struct PhysicalConfig {
  double M = 1.0;
  double alpha = 0.0;
  double chi = 0.0;
  double B0 = 0.0;
  double Omega = 0.0;
  double D = 0.0;
  double a = 0.0;
  std::optional<double> m_effective;
  std::optional<double> mu_override;
  std::optional<double> tau2_override;

  /// Config described directly by (m, mu, tau2, Omega).
  static PhysicalConfig from_couplings(double m, double mu, double tau2, double Omega) {
    PhysicalConfig c;
    c.M = m;
    c.Omega = Omega;
    c.m_effective = m;
    c.mu_override = mu;
    c.tau2_override = tau2;
    c.validate();
    return c;
  }

  double mass() const { return m_effective ? *m_effective : effective_mass(M, alpha, B0); }
  double mu() const { return mu_override ? *mu_override : 2.0 * D * a; }
  double tau2() const { return tau2_override ? *tau2_override : D * a * a; }

  /// Cyclotron frequency implied by (alpha, chi, B0).
  double lab_omega() const { return cyclotron_frequency(alpha, chi, B0, mass()); }

  void validate() const {
    for (auto [v, name] : {std::pair{M, "M"}, {alpha, "alpha"}, {chi, "chi"}, {B0, "B0"},
                           {Omega, "Omega"}, {D, "D"}, {a, "a"}})
      detail::require_finite(v, name);
    if (!(M > 0.0)) throw InvalidArgument("bare mass M must be positive");
    if (alpha < 0.0) throw InvalidArgument("polarizability alpha must be non-negative");
    if (D < 0.0) throw InvalidArgument("Kratzer constant D must be non-negative");
    if (a < 0.0) throw InvalidArgument("Kratzer constant a must be non-negative");
    if (m_effective) {
      detail::require_finite(*m_effective, "m_effective");
      if (!(*m_effective > 0.0)) throw InvalidArgument("m_effective must be positive");
    }
    if (mu_override) detail::require_finite(*mu_override, "mu");
    if (tau2_override) {
      detail::require_finite(*tau2_override, "tau2");
      if (*tau2_override < 0.0) throw InvalidArgument("tau2 must be non-negative");
    }
    if (!(mass() > 0.0)) throw InvalidArgument("effective mass must be positive");
  }
};

/// gamma = sqrt(l^2 + 2 m tau2), depends on l only through l^2.
inline double channel_gamma(int l, double m, double tau2) {
  const double ll = static_cast<double>(l);
  return std::sqrt(ll * ll + 2.0 * m * tau2);
}

/// Derived quantities of one angular-momentum channel at a fixed omega.
struct ChannelParams {
  double m = 0.0;
  double omega = 0.0;
  double Omega = 0.0;
  int l = 0;
  double gamma = 0.0;
  double mu = 0.0;
  double tau2 = 0.0;
  double varpi = 0.0;
  double theta = 0.0;
};

namespace detail {

inline ChannelParams assemble_channel(const PhysicalConfig& config, int l, double omega,
                                      double varpi) {
  ChannelParams ch;
  ch.m = config.mass();
  ch.omega = omega;
  ch.Omega = config.Omega;
  ch.l = l;
  ch.mu = config.mu();
  ch.tau2 = config.tau2();
  ch.gamma = channel_gamma(l, ch.m, ch.tau2);
  ch.varpi = varpi;
  ch.theta = 2.0 * ch.m * ch.mu / std::sqrt(ch.m * varpi);
  return ch;
}

}  // namespace detail

/// Channel parameters for angular momentum l at cyclotron frequency omega.
/// Throws NonConfiningChannel unless omega^2/4 + Omega*omega > 0.
inline ChannelParams channel_params(const PhysicalConfig& config, int l, double omega) {
  config.validate();
  detail::require_finite(omega, "omega");
  const double varpi2 = 0.25 * omega * omega + config.Omega * omega;
  if (!(varpi2 > 0.0))
    throw NonConfiningChannel("non-confining channel: omega^2/4 + Omega*omega = " +
                              std::to_string(varpi2) + " <= 0");
  return detail::assemble_channel(config, l, omega, std::sqrt(varpi2));
}

/// Channel parameters when varpi is already known exactly (e.g. from a
/// truncation root). Avoids recomputing varpi from omega, which cancels
/// badly on the minus branch when |Omega| >> varpi.
inline ChannelParams channel_params_with_varpi(const PhysicalConfig& config, int l, double omega,
                                               double varpi) {
  config.validate();
  if (!(varpi > 0.0) || !std::isfinite(varpi))
    throw NonConfiningChannel("non-confining channel: varpi must be positive");
  return detail::assemble_channel(config, l, omega, varpi);
}

struct EnergyRecord {
  std::optional<int> n;  // set when nu is a non-negative even integer
  int l = 0;
  double E = 0.0;
  double beta = 0.0;
  double nu = 0.0;
};

/// Inverts nu = beta/(m varpi) - 2 - 2gamma with beta = 2mE + 2m Omega l + m omega l.
inline EnergyRecord energy_from_nu(const ChannelParams& ch, double nu) {
  if (!(ch.varpi > 0.0)) throw NonConfiningChannel("energy_from_nu requires varpi > 0");
  detail::require_finite(nu, "nu");
  const double l = static_cast<double>(ch.l);
  EnergyRecord rec;
  rec.l = ch.l;
  rec.nu = nu;
  rec.beta = ch.m * ch.varpi * (nu + 2.0 + 2.0 * ch.gamma);
  rec.E = (rec.beta - 2.0 * ch.m * ch.Omega * l - ch.m * ch.omega * l) / (2.0 * ch.m);
  const double half = 0.5 * nu;
  if (nu >= 0.0 && half == std::floor(half)) rec.n = static_cast<int>(half);
  return rec;
}

/// nu implied by an energy E in channel ch.
inline double nu_from_energy(const ChannelParams& ch, double E) {
  const double l = static_cast<double>(ch.l);
  const double beta = 2.0 * ch.m * E + 2.0 * ch.m * ch.Omega * l + ch.m * ch.omega * l;
  return beta / (ch.m * ch.varpi) - 2.0 - 2.0 * ch.gamma;
}

}  // namespace qes
