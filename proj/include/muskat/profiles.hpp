#pragma once

#include <string>

#include "muskat/grid.hpp"
#include "muskat/params.hpp"
#include "muskat/state.hpp"

namespace muskat {

/// One interface profile: a Gaussian amplitude*exp(-((x-center)/width)^2),
/// a single cosine mode amplitude*cos(mode*(x-center)) (width reused as the
/// integer mode number), or a compact C^1 bump
/// amplitude*cos^2(pi (x-center)/(2 width)) on |x-center| <= width.
struct ProfileSpec {
  enum class Kind { zero, gaussian, cosine, cosbump };
  Kind kind = Kind::zero;
  double amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;
};

double eval_profile(const ProfileSpec& p, double x);

struct InitialDataSpec {
  // Either (f, g) directly, or (h, theta1) with f = h + mu1*sigma*theta1,
  // g = h - mu2*sigma*theta1 so that ||theta0||/sigma is fixed across sigma.
  bool use_htheta = false;
  ProfileSpec f, g;     // when !use_htheta
  ProfileSpec h, theta1;  // when use_htheta
  double gamma0 = 0.1;
};

struct InitialData {
  InterfaceState state;
  // Reported so the caller can check the smallness conditions: the k-energy
  // ||h0||^2 + mu1 mu2 ||theta0||^2 and the gap ratio ||theta0||_{H^{k-3}}/sigma.
  double hk_energy = 0.0;
  double theta_ratio = 0.0;
};

// Samples the profiles, validates the tail tolerance and the gap, and
// reports the smallness quantities at order k.  Throws std::invalid_argument
// on collision or a profile that does not decay below tail_tol near +/-L.
InitialData init_profile(const InitialDataSpec& spec, const Grid1D& g,
                         const PhysicalParams& p, int k, double tail_tol = 1e-12);

}  // namespace muskat
