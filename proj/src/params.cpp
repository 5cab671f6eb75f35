#include "muskat/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace muskat {

PhysicalParams make_params(double rho0, double rho1, double rho2, double sigma) {
  if (!(rho0 < rho1 && rho1 < rho2)) {
    throw std::invalid_argument("make_params: densities must satisfy rho0 < rho1 < rho2, got " +
                                std::to_string(rho0) + ", " + std::to_string(rho1) + ", " +
                                std::to_string(rho2));
  }
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("make_params: sigma must lie in (0, 1), got " +
                                std::to_string(sigma));
  }
  PhysicalParams p;
  p.rho0 = rho0;
  p.rho1 = rho1;
  p.rho2 = rho2;
  p.sigma = sigma;
  const double jump = rho2 - rho0;
  p.delta_rho = jump / (2.0 * std::numbers::pi);
  p.mu1 = (rho2 - rho1) / jump;
  p.mu2 = (rho1 - rho0) / jump;
  return p;
}

}  // namespace muskat
