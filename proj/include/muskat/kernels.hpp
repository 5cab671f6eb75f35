#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "muskat/params.hpp"

namespace muskat {

/// One (x, x1) evaluation point for the singular kernels.  dx = x - x1 is
/// always real (both points sit on the same horizontal line); the field
/// values may be complex when the line is Im x = +/-gamma.  Consistency
/// theta = f - g is the caller's responsibility.
template <typename T>
struct KernelArgs {
  double dx = 0.0;    // x - x1, nonzero
  double sigma = 0.0; // half gap, positive
  T fx{}, fx1{};      // f(x), f(x1)
  T gx{}, gx1{};      // g(x), g(x1)
  T thx{}, thx1{};    // theta(x), theta(x1)
  T dfx1{}, dgx1{}, dthx1{};  // slopes at x1

  T delta_f() const { return fx - fx1; }
  T delta_g() const { return gx - gx1; }
  T delta_theta() const { return thx - thx1; }
};

using RealArgs = KernelArgs<double>;
using ComplexArgs = KernelArgs<std::complex<double>>;

enum class PKernel { P11, P12, P21, P22 };

template <typename T>
T eval_P(PKernel which, const KernelArgs<T>& a);

/// The twelve pieces of the x1-derivatives of P_ij.  K's are the symmetric
/// leading parts, J's the lower-order remainders; the 12/21 entries come in
/// two equivalent splittings (plain and tilde).
template <typename T>
struct KernelDecomposition {
  T K11{}, J11{}, K22{}, J22{};
  T K12{}, J12{}, K21{}, J21{};
  T Kt12{}, Jt12{}, Kt21{}, Jt21{};

  T kf_combo() const { return K11 - 0.5 * K12 - 0.5 * K21; }
  T kg_combo() const { return K22 - 0.5 * Kt12 - 0.5 * Kt21; }
};

template <typename T>
KernelDecomposition<T> eval_decomposition(const KernelArgs<T>& a);

/// Coefficient polynomials of the rational rewrite of K11 - K12/2 - K21/2.
/// Arguments: w1 = Delta f / Delta x, w2 = theta(x)/(2 sigma),
/// w3 = theta(x1)/(2 sigma).
template <typename T>
struct LemmaCoeffs {
  T c[8];
};
template <typename T>
LemmaCoeffs<T> lemma_coeffs(T w1, T w2, T w3);

template <typename T>
T poly_F(double dx, double two_sigma, T w1, T w2, T w3);
template <typename T>
T poly_G(double dx, double two_sigma, T w1, T w2, T w3);
// E is the odd-coefficient part with the common w1*(w2-w3) factor removed.
template <typename T>
T poly_E(double dx, double two_sigma, T w1, T w2, T w3);

double poly_F0(double dx, double two_sigma);
double poly_G0(double dx, double two_sigma);

/// K11 - K12/2 - K21/2 = K_f + e_f with K_f = F/G and e_f carrying the
/// Delta theta * Delta f factor.
template <typename T>
std::pair<T, T> eval_Kf_ef(const KernelArgs<T>& a);
/// Same for K22 - Kt12/2 - Kt21/2: swap theta(x) with theta(x1) and use
/// Delta g in place of Delta f; e_g picks up a minus sign.
template <typename T>
std::pair<T, T> eval_Kg_eg(const KernelArgs<T>& a);

/// Unperturbed dissipation kernels: D11_0 and D22_0 = 2 F0/G0.
std::pair<double, double> eval_D0(double dx, const PhysicalParams& p);

/// Closed form of P12 - P21; a single (Delta f + Delta g) factor makes the
/// cancellation explicit.
template <typename T>
T eval_antisym(const KernelArgs<T>& a);

/// Sum of alpha/(alpha^2 + c^2) over all periodic images alpha + 2Lm,
/// evaluated as (pi/2L) Re cot(pi (alpha + i c)/(2L)).  This is the kernel
/// the quadrature engine uses: the x-grid is periodic, so the principal
/// value integral over the line collapses to one period of this sum.
double periodized_pv_kernel(double alpha, double c, double L);

/// Cached per-alpha factors of the periodized kernel.  With u = pi*alpha/2L
/// and v = pi*c/2L the image sum is (pi/2L) sin(2u)/(cosh(2v) - cos(2u));
/// the denominator is evaluated as 2(sinh^2 v + sin^2 u), which stays fully
/// accurate as alpha -> 0 where the naive difference cancels.
struct PeriodizedAlpha {
  double sinu;
  double cosu;
  double sinu_sq;
  double scale;   // pi / (2L)
  double arg_c;   // pi / (2L), multiplies c inside sinh
  double eval(double c) const {
    const double sh = std::sinh(arg_c * c);
    return scale * sinu * cosu / (sh * sh + sinu_sq);
  }
};
PeriodizedAlpha make_periodized_alpha(double alpha, double L);

}  // namespace muskat
