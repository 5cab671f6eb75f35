#pragma once

#include <optional>
#include <string>

#include "muskat/grid.hpp"
#include "muskat/params.hpp"
#include "muskat/spectral.hpp"
#include "muskat/state.hpp"

namespace muskat {

// Coefficients smaller than this fraction of the largest one are treated as
// FFT rounding noise and excluded from the cosh-weighted sums; otherwise the
// exploding weight would amplify noise into the norms long before the signal
// reaches the Nyquist band.
inline constexpr double kCoeffFloor = 1e-13;

// 2*gamma*xi_max above this trips the overflow guard.
inline constexpr double kCoshArgMax = 700.0;

/// || f ||^2_{H^k_gamma}: sum over j <= k of the squared L2 norms of the two
/// boundary traces of the j-th derivative, evaluated Fourier-side with
/// 2 cosh(2 gamma xi) weights.  Throws ResolutionLossError past the guard.
double hk_gamma_norm(const Spectrum& c, const Grid1D& g, int k, double gamma);

/// max over the grid and over both boundary lines of |f(x +/- i gamma)|.
double linf_gamma_norm(const Spectrum& c, const Grid1D& g, double gamma);

/// Quadratic dissipation functionals, Fourier side.  The h block realizes
/// the D11_0 difference kernel, whose exact Fourier weight is
/// pi |xi| (1 - 2 mu1 mu2 (1 - e^{-2 sigma |xi|})); the theta block realizes
/// (2 sigma)^2 / (alpha^2 (alpha^2 + (2 sigma)^2)) with weight
/// pi (|xi| - (1 - e^{-2 sigma |xi|})/(2 sigma)).  Both match the real-space
/// double quadrature of the same kernels (see tests).
double diss_h_block(const Spectrum& h, const Grid1D& g, int k, double gamma,
                    const PhysicalParams& p);
double diss_theta_block(const Spectrum& theta, const Grid1D& g, int k, double gamma,
                        double sigma);
double diss_k(const Spectrum& h, const Spectrum& theta, const Grid1D& g, int k,
              double gamma, const PhysicalParams& p);

// The theta-block weight |xi| - (1 - e^{-2 sigma |xi|})/(2 sigma), kept in
// [0, min(|xi|, sigma xi^2)]; exposed for the weight audits.
double diss_theta_weight(double xi, double sigma);

/// E(t) = ||h||^2_{H^k_gamma} + mu1 mu2 ||theta||^2_{H^k_gamma}
///        + ||theta/sigma||^2_{H^{k-3}_gamma}, k >= 3.
double energy_E(const HThetaState& s, const Grid1D& g, int k, const PhysicalParams& p);

/// Empirical analyticity radius: least-squares slope of log|c_m| against
/// |xi_m| over the band above the noise floor.  nullopt when the spectrum
/// carries no usable decay band (all noise, or a single mode).
std::optional<double> strip_width_estimate(const Spectrum& c, const Grid1D& g);

/// One monitoring row of a trajectory.
struct NormReport {
  double t = 0.0;
  double gamma = 0.0;
  double energy = 0.0;
  double hk_h = 0.0;
  double hk_theta = 0.0;
  double hk_theta1 = 0.0;
  double linf_dxh = 0.0;
  double linf_dxtheta = 0.0;
  double diss = 0.0;
  double min_dist = 0.0;
  std::optional<double> strip_estimate;

  static std::string csv_header();
  std::string csv_row() const;
};

NormReport compute_report(const HThetaState& s, const Grid1D& g,
                          const PhysicalParams& p, int k);

}  // namespace muskat
