#pragma once

#include <vector>

#include "muskat/grid.hpp"
#include "muskat/params.hpp"

namespace muskat {

/// Interface perturbations sampled on the grid: upper interface y = sigma + f,
/// lower interface y = -sigma + g.  gamma is the current analyticity-strip
/// width, t the simulation time.
struct InterfaceState {
  std::vector<double> f;
  std::vector<double> g;
  double gamma = 0.0;
  double t = 0.0;
};

/// Diagonalized variables: h = mu2 f + mu1 g, theta = f - g, theta1 = theta/sigma.
struct HThetaState {
  std::vector<double> h;
  std::vector<double> theta;
  std::vector<double> theta1;
  double gamma = 0.0;
  double t = 0.0;
};

HThetaState to_htheta(const InterfaceState& s, const PhysicalParams& p);
InterfaceState from_htheta(const HThetaState& s, const PhysicalParams& p);

// 2*sigma + min_i (f_i - g_i).  Positive while the interfaces are apart.
double min_distance(const InterfaceState& s, const PhysicalParams& p);
double min_distance(const HThetaState& s, const PhysicalParams& p);

}  // namespace muskat
