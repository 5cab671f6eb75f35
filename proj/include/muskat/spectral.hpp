#pragma once

#include <complex>
#include <span>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

/// Fourier-series coefficients of a real grid field, FFT slot order.
/// spectrum[m] is the coefficient of e^{i xi_m x} with xi_m = pi*m/L
/// (m > n/2 aliases to m - n).  Real input gives conjugate symmetry.
using Spectrum = std::vector<std::complex<double>>;

Spectrum analyze(std::span<const double> u, const Grid1D& g);
std::vector<double> synthesize(const Spectrum& c, const Grid1D& g);

// Coefficients of the order-th spatial derivative.  The Nyquist slot is
// zeroed (its derivative sign is ambiguous for real data).
Spectrum derivative(const Spectrum& c, const Grid1D& g, int order = 1);

// Samples of the field on the half-shifted grid x_i + dx/2.
std::vector<double> shift_half(const Spectrum& c, const Grid1D& g);

// Two-thirds rule: zero all slots with |m| > n/3.
void dealias(Spectrum& c, const Grid1D& g);

// Coefficients below relative_floor * max|c_m| are double-precision noise;
// zeroing them on the field spectrum -- before any differentiation -- keeps
// the cosh-weighted norms from amplifying rounding into the diagnostics.
void apply_coeff_floor(Spectrum& c, double relative_floor);

// max |c_m| over the upper fifth of the retained band, relative to the
// largest coefficient.  Near 1 means the solution no longer fits the grid.
double spectral_tail(const Spectrum& c, const Grid1D& g);

// Convenience: dealiased derivative samples at nodes and at midpoints.
struct DerivativeSamples {
  std::vector<double> at_nodes;
  std::vector<double> at_midpoints;
};
DerivativeSamples derivative_samples(std::span<const double> u, const Grid1D& g);

}  // namespace muskat
