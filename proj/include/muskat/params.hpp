#pragma once

namespace muskat {

/// Densities of the three layers and the derived coupling weights.
/// delta_rho = (rho2 - rho0)/(2*pi), mu1 = (rho2 - rho1)/(rho2 - rho0),
/// mu2 = (rho1 - rho0)/(rho2 - rho0); mu1 + mu2 = 1.  sigma is half the
/// unperturbed distance between the interfaces.
struct PhysicalParams {
  double rho0 = 0.0;
  double rho1 = 1.0;
  double rho2 = 2.0;
  double sigma = 0.1;

  double delta_rho = 0.0;
  double mu1 = 0.5;
  double mu2 = 0.5;
};

// Throws std::invalid_argument unless rho0 < rho1 < rho2 and 0 < sigma < 1.
PhysicalParams make_params(double rho0, double rho1, double rho2, double sigma);

}  // namespace muskat
