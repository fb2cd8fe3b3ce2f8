// Ground-state cyclotron frequencies and energies for a few angular momenta,
// checked against the finite-difference solver.

#include <cstdio>

#include "qes/qes.hpp"

int main() {
  const auto config = qes::PhysicalConfig::from_couplings(/*m=*/1.0, /*mu=*/1.0, /*tau2=*/0.0,
                                                          /*Omega=*/1.0);
  std::printf("%3s %10s %12s %12s %12s %10s\n", "l", "theta", "varpi", "omega", "E", "gap");
  for (int l = -2; l <= 2; ++l) {
    for (const auto& line : qes::allowed_frequencies(1, l, config, qes::BranchSelection::plus)) {
      const auto rep = qes::verify_quasi_exact(1, l, config, {});
      std::printf("%3d %10.6f %12.8f %12.8f %12.8f %10.2e\n", l, line.theta_root, line.varpi,
                  line.omega, line.E, rep.abs_gap);
    }
  }
}
