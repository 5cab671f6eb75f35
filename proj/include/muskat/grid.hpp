#pragma once

#include <cstddef>

namespace muskat {

/// Uniform grid on [-L, L) with n nodes (n a power of two).  The alpha
/// integration grid is shifted by half a node so that alpha = 0 is never a
/// quadrature point.
class Grid1D {
 public:
  Grid1D(double half_length, int n);

  double half_length() const { return L_; }
  int n() const { return n_; }
  double dx() const { return dx_; }
  double quad_offset() const { return 0.5 * dx_; }

  double node(int i) const { return -L_ + i * dx_; }
  // midpoint(i) = node(i) + dx/2; the point x_i - alpha_j lands here.
  double midpoint(int i) const { return -L_ + (i + 0.5) * dx_; }
  // alpha value for pair index q in [0, n/2): alpha_q = (q + 1/2) dx.
  double alpha(int q) const { return (q + 0.5) * dx_; }

  // Frequency of spectral slot m in FFT layout (m in [0, n)).
  double xi(int m) const {
    int k = (m <= n_ / 2) ? m : m - n_;
    return k * xi1_;
  }
  double xi_max() const { return (n_ / 2) * xi1_; }

 private:
  double L_;
  int n_;
  double dx_;
  double xi1_;  // pi / L
};

}  // namespace muskat
