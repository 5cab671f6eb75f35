#include "muskat/kernels.hpp"

#include <cmath>
#include <numbers>

namespace muskat {

namespace {

template <typename T>
void check_dx(const KernelArgs<T>& a) {
  if (a.dx == 0.0) {
    throw std::domain_error("kernel evaluation at dx = 0");
  }
}

template <typename T>
T sq(T v) {
  return v * v;
}

}  // namespace

template <typename T>
T eval_P(PKernel which, const KernelArgs<T>& a) {
  check_dx(a);
  const double dx = a.dx;
  const double s = 2.0 * a.sigma;
  switch (which) {
    case PKernel::P11:
      return dx / (dx * dx + sq(a.delta_f()));
    case PKernel::P12:
      return dx / (dx * dx + sq(s + a.fx - a.gx1));
    case PKernel::P21:
      return dx / (dx * dx + sq(s + a.fx1 - a.gx));
    case PKernel::P22:
      return dx / (dx * dx + sq(a.delta_g()));
  }
  throw std::logic_error("unreachable");
}

template <typename T>
KernelDecomposition<T> eval_decomposition(const KernelArgs<T>& a) {
  check_dx(a);
  const double dx = a.dx;
  const double dx2 = dx * dx;
  const double s = 2.0 * a.sigma;
  const T df = a.delta_f();
  const T dg = a.delta_g();

  KernelDecomposition<T> d;

  const T den11 = dx2 + sq(df);
  d.K11 = T(1.0) / den11;
  d.J11 = 2.0 * df * (a.dfx1 * dx - df) / sq(den11);

  const T den22 = dx2 + sq(dg);
  d.K22 = T(1.0) / den22;
  d.J22 = 2.0 * dg * (a.dgx1 * dx - dg) / sq(den22);

  const T b12 = df + s + a.thx1;  // Delta f + 2 sigma + theta(x1)
  const T den12 = dx2 + sq(b12);
  d.K12 = (dx2 + sq(df) - sq(s + a.thx1)) / sq(den12);
  d.J12 = (2.0 * b12 * (a.dfx1 * dx - df) - 2.0 * dx * a.dthx1 * b12) / sq(den12);

  const T b21 = df - s - a.thx;  // Delta f - 2 sigma - theta(x)
  const T den21 = dx2 + sq(b21);
  d.K21 = (dx2 + sq(df) - sq(s + a.thx)) / sq(den21);
  d.J21 = 2.0 * b21 * (a.dfx1 * dx - df) / sq(den21);

  const T c12 = dg + s + a.thx;  // Delta g + 2 sigma + theta(x)
  const T dent12 = dx2 + sq(c12);
  d.Kt12 = (dx2 + sq(dg) - sq(s + a.thx)) / sq(dent12);
  d.Jt12 = 2.0 * c12 * (a.dgx1 * dx - dg) / sq(dent12);

  const T c21 = dg - s - a.thx1;  // Delta g - 2 sigma - theta(x1)
  const T dent21 = dx2 + sq(c21);
  d.Kt21 = (dx2 + sq(dg) - sq(s + a.thx1)) / sq(dent21);
  d.Jt21 = (2.0 * c21 * (a.dgx1 * dx - dg) + 2.0 * dx * a.dthx1 * c21) / sq(dent21);

  return d;
}

template <typename T>
LemmaCoeffs<T> lemma_coeffs(T w1, T w2, T w3) {
  const T a2 = T(1.0) + w2;
  const T a3 = T(1.0) + w3;
  const T P = a2 * a3;
  const T S2 = a2 * a2 + a3 * a3;
  const T Q = S2 + P;
  const T D2 = sq(w2 - w3);
  const T W = w1 * w1;
  const T odd = w1 * (w2 - w3);

  LemmaCoeffs<T> c;
  c.c[0] = sq(sq(P));
  c.c[1] = 4.0 * odd * P * P * P;
  c.c[2] = 0.5 * (5.0 - 3.0 * W) * P * P * S2 + 8.0 * W * P * P * D2;
  c.c[3] = odd * P * (4.0 * (1.0 + W) * Q - (10.0 + 26.0 * W) * P);
  c.c[4] = (0.5 * S2 * S2 + 5.0 * P * P) + W * (S2 * S2 - 16.0 * P * S2 + 30.0 * P * P) +
           W * W * (0.5 * S2 * S2 - 16.0 * P * S2 + 41.0 * P * P);
  c.c[5] = odd * (1.0 + W) * ((10.0 + 26.0 * W) * P - 2.0 * (1.0 + W) * Q);
  c.c[6] = 1.5 * sq(1.0 + W) * (1.0 - 3.0 * W) * S2 + 8.0 * W * sq(1.0 + W) * D2;
  c.c[7] = -2.0 * odd * sq(1.0 + W) * (1.0 + W);
  return c;
}

template <typename T>
T poly_F(double dx, double s, T w1, T w2, T w3) {
  const LemmaCoeffs<T> c = lemma_coeffs(w1, w2, w3);
  const double dx2 = dx * dx, s2 = s * s;
  // c0 s^8 + c2 dx^2 s^6 + c4 dx^4 s^4 + c6 dx^6 s^2, Horner in dx^2
  return s2 * (((c.c[6] * dx2 + c.c[4] * s2) * dx2 + c.c[2] * s2 * s2) * dx2 +
               c.c[0] * s2 * s2 * s2);
}

template <typename T>
T poly_E(double dx, double s, T w1, T w2, T w3) {
  // Odd coefficients with the common w1 (w2 - w3) factor cancelled.
  const T a2 = T(1.0) + w2;
  const T a3 = T(1.0) + w3;
  const T P = a2 * a3;
  const T S2 = a2 * a2 + a3 * a3;
  const T Q = S2 + P;
  const T W = w1 * w1;
  const T e1 = 4.0 * P * P * P;
  const T e3 = P * (4.0 * (1.0 + W) * Q - (10.0 + 26.0 * W) * P);
  const T e5 = (1.0 + W) * ((10.0 + 26.0 * W) * P - 2.0 * (1.0 + W) * Q);
  const T e7 = -2.0 * sq(1.0 + W) * (1.0 + W);
  const double dx2 = dx * dx, s2 = s * s;
  return ((e7 * dx2 + e5 * s2) * dx2 + e3 * s2 * s2) * dx2 + e1 * s2 * s2 * s2;
}

template <typename T>
T poly_G(double dx, double s, T w1, T w2, T w3) {
  const double dx2 = dx * dx;
  const T b = w1 * dx + s * (T(1.0) + w3);
  const T c = -w1 * dx + s * (T(1.0) + w2);
  return (T(1.0) + w1 * w1) * dx2 * sq(dx2 + sq(b)) * sq(dx2 + sq(c));
}

double poly_F0(double dx, double s) {
  const double dx2 = dx * dx, s2 = s * s;
  return s2 * (s2 * s2 * s2 + 5.0 * dx2 * s2 * s2 + 7.0 * dx2 * dx2 * s2 + 3.0 * dx2 * dx2 * dx2);
}

double poly_G0(double dx, double s) {
  const double q = dx * dx + s * s;
  return dx * dx * q * q * q * q;
}

template <typename T>
std::pair<T, T> eval_Kf_ef(const KernelArgs<T>& a) {
  check_dx(a);
  const double s = 2.0 * a.sigma;
  const T w1 = a.delta_f() / a.dx;
  const T w2 = a.thx / s;
  const T w3 = a.thx1 / s;
  const T G = poly_G(a.dx, s, w1, w2, w3);
  const T Kf = poly_F(a.dx, s, w1, w2, w3) / G;
  const T ef = a.delta_theta() * a.delta_f() * poly_E(a.dx, s, w1, w2, w3) / G;
  return {Kf, ef};
}

template <typename T>
std::pair<T, T> eval_Kg_eg(const KernelArgs<T>& a) {
  check_dx(a);
  const double s = 2.0 * a.sigma;
  const T w1 = a.delta_g() / a.dx;
  const T w2 = a.thx1 / s;  // swapped
  const T w3 = a.thx / s;
  const T G = poly_G(a.dx, s, w1, w2, w3);
  const T Kg = poly_F(a.dx, s, w1, w2, w3) / G;
  const T eg = -a.delta_theta() * a.delta_g() * poly_E(a.dx, s, w1, w2, w3) / G;
  return {Kg, eg};
}

std::pair<double, double> eval_D0(double dx, const PhysicalParams& p) {
  if (dx == 0.0) throw std::domain_error("eval_D0 at dx = 0");
  const double s = 2.0 * p.sigma;
  const double dx2 = dx * dx, s2 = s * s;
  const double d11 = p.mu2 * p.mu2 / dx2 + 2.0 * p.mu1 * p.mu2 * (dx2 - s2) / sq(dx2 + s2) +
                     p.mu1 * p.mu1 / dx2;
  const double d22 = 2.0 * poly_F0(dx, s) / poly_G0(dx, s);
  return {d11, d22};
}

template <typename T>
T eval_antisym(const KernelArgs<T>& a) {
  check_dx(a);
  const double dx = a.dx;
  const double dx2 = dx * dx;
  const double s = 2.0 * a.sigma;
  const T b12 = a.delta_f() + s + a.thx1;
  const T b21 = a.delta_f() - s - a.thx;
  return -dx * (2.0 * s + a.thx + a.thx1) * (a.delta_f() + a.delta_g()) /
         ((dx2 + sq(b12)) * (dx2 + sq(b21)));
}

double periodized_pv_kernel(double alpha, double c, double L) {
  return make_periodized_alpha(alpha, L).eval(c);
}

PeriodizedAlpha make_periodized_alpha(double alpha, double L) {
  PeriodizedAlpha k;
  const double u = 0.5 * std::numbers::pi * alpha / L;
  k.sinu = std::sin(u);
  k.cosu = std::cos(u);
  k.sinu_sq = k.sinu * k.sinu;
  k.scale = std::numbers::pi / (2.0 * L);
  k.arg_c = 0.5 * std::numbers::pi / L;
  return k;
}

// Explicit instantiations for the two scalar types in use.
template double eval_P<double>(PKernel, const KernelArgs<double>&);
template std::complex<double> eval_P<std::complex<double>>(PKernel,
                                                           const KernelArgs<std::complex<double>>&);
template KernelDecomposition<double> eval_decomposition<double>(const KernelArgs<double>&);
template KernelDecomposition<std::complex<double>> eval_decomposition<std::complex<double>>(
    const KernelArgs<std::complex<double>>&);
template LemmaCoeffs<double> lemma_coeffs<double>(double, double, double);
template LemmaCoeffs<std::complex<double>> lemma_coeffs<std::complex<double>>(
    std::complex<double>, std::complex<double>, std::complex<double>);
template double poly_F<double>(double, double, double, double, double);
template std::complex<double> poly_F<std::complex<double>>(double, double, std::complex<double>,
                                                           std::complex<double>,
                                                           std::complex<double>);
template double poly_E<double>(double, double, double, double, double);
template std::complex<double> poly_E<std::complex<double>>(double, double, std::complex<double>,
                                                           std::complex<double>,
                                                           std::complex<double>);
template double poly_G<double>(double, double, double, double, double);
template std::complex<double> poly_G<std::complex<double>>(double, double, std::complex<double>,
                                                           std::complex<double>,
                                                           std::complex<double>);
template std::pair<double, double> eval_Kf_ef<double>(const KernelArgs<double>&);
template std::pair<std::complex<double>, std::complex<double>> eval_Kf_ef<std::complex<double>>(
    const KernelArgs<std::complex<double>>&);
template std::pair<double, double> eval_Kg_eg<double>(const KernelArgs<double>&);
template std::pair<std::complex<double>, std::complex<double>> eval_Kg_eg<std::complex<double>>(
    const KernelArgs<std::complex<double>>&);
template double eval_antisym<double>(const KernelArgs<double>&);
template std::complex<double> eval_antisym<std::complex<double>>(
    const KernelArgs<std::complex<double>>&);

}  // namespace muskat
