#include "muskat/velocity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "muskat/errors.hpp"
#include "muskat/kernels.hpp"
#include "muskat/spectral.hpp"
#include "muskat/threading.hpp"

namespace muskat {

namespace {

// Everything the alpha-sums need, precomputed once per evaluation: node and
// midpoint samples of f and g, the transport slopes at nodes, the integrand
// slopes at midpoints, and the per-alpha kernel factors.  The quadrature
// pairs +alpha with -alpha so the odd singular parts cancel exactly.
struct QuadData {
  int n = 0;
  double dx = 0.0;
  double S = 0.0;  // 2 sigma
  std::vector<double> f, g;
  std::vector<double> fm, gm;
  std::vector<PeriodizedAlpha> pa;  // index q -> alpha_q = (q + 1/2) dx
};

QuadData prepare(const InterfaceState& s, const PhysicalParams& p, const Grid1D& g) {
  if (static_cast<int>(s.f.size()) != g.n() || static_cast<int>(s.g.size()) != g.n()) {
    throw std::invalid_argument("state sample count does not match grid");
  }
  if (min_distance(s, p) <= 0.0) {
    throw CollisionError("interfaces touch: 2 sigma + min(f - g) <= 0");
  }
  QuadData q;
  q.n = g.n();
  q.dx = g.dx();
  q.S = 2.0 * p.sigma;
  q.f = s.f;
  q.g = s.g;
  q.fm = shift_half(analyze(s.f, g), g);
  q.gm = shift_half(analyze(s.g, g), g);
  q.pa.reserve(q.n / 2);
  for (int k = 0; k < q.n / 2; ++k) {
    q.pa.push_back(make_periodized_alpha(g.alpha(k), g.half_length()));
  }
  return q;
}

struct KernelRow {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;  // plain kernel sums
  double b11 = 0, b12 = 0, b21 = 0, b22 = 0;  // weighted by w1 at midpoints
  double c11 = 0, c12 = 0, c21 = 0, c22 = 0;  // weighted by w2 at midpoints
};

// Kernel sums at node i.  w1m/w2m may be null (velocity-only path).
KernelRow kernel_row(const QuadData& q, int i, const double* w1m, const double* w2m) {
  KernelRow r;
  const int mask = q.n - 1;
  const double fi = q.f[i], gi = q.g[i];
  for (int k = 0; k < q.n / 2; ++k) {
    const PeriodizedAlpha& pa = q.pa[k];
    const int qm = (i - k - 1 + q.n) & mask;  // x_i - alpha_k
    const int qp = (i + k) & mask;            // x_i + alpha_k
    // kernel is odd in alpha at fixed argument, so the +alpha side negates
    const double k11m = pa.eval(fi - q.fm[qm]);
    const double k11p = -pa.eval(fi - q.fm[qp]);
    const double k12m = pa.eval(q.S + fi - q.gm[qm]);
    const double k12p = -pa.eval(q.S + fi - q.gm[qp]);
    const double k21m = pa.eval(q.S + q.fm[qm] - gi);
    const double k21p = -pa.eval(q.S + q.fm[qp] - gi);
    const double k22m = pa.eval(gi - q.gm[qm]);
    const double k22p = -pa.eval(gi - q.gm[qp]);
    r.a11 += k11m + k11p;
    r.a12 += k12m + k12p;
    r.a21 += k21m + k21p;
    r.a22 += k22m + k22p;
    if (w1m != nullptr) {
      r.b11 += k11m * w1m[qm] + k11p * w1m[qp];
      r.b12 += k12m * w1m[qm] + k12p * w1m[qp];
      r.b21 += k21m * w1m[qm] + k21p * w1m[qp];
      r.b22 += k22m * w1m[qm] + k22p * w1m[qp];
      r.c11 += k11m * w2m[qm] + k11p * w2m[qp];
      r.c12 += k12m * w2m[qm] + k12p * w2m[qp];
      r.c21 += k21m * w2m[qm] + k21p * w2m[qp];
      r.c22 += k22m * w2m[qm] + k22p * w2m[qp];
    }
  }
  return r;
}

}  // namespace

VelocityField compute_velocity(const InterfaceState& s, const PhysicalParams& p,
                               const Grid1D& g) {
  const QuadData q = prepare(s, p, g);
  VelocityField v;
  v.u_plus.resize(q.n);
  v.u_minus.resize(q.n);
  const double w = p.delta_rho * q.dx;
  parallel_for(q.n, [&](int i) {
    const KernelRow r = kernel_row(q, i, nullptr, nullptr);
    v.u_plus[i] = -w * (p.mu2 * r.a11 + p.mu1 * r.a12);
    v.u_minus[i] = -w * (p.mu2 * r.a21 + p.mu1 * r.a22);
  });
  return v;
}

RhsPair rhs_fg(const InterfaceState& s, const PhysicalParams& p, const Grid1D& g) {
  const QuadData q = prepare(s, p, g);
  const DerivativeSamples df = derivative_samples(s.f, g);
  const DerivativeSamples dg = derivative_samples(s.g, g);
  RhsPair out;
  out.first.resize(q.n);
  out.second.resize(q.n);
  const double w = p.delta_rho * q.dx;
  parallel_for(q.n, [&](int i) {
    const KernelRow r = kernel_row(q, i, df.at_midpoints.data(), dg.at_midpoints.data());
    const double up = -w * (p.mu2 * r.a11 + p.mu1 * r.a12);
    const double um = -w * (p.mu2 * r.a21 + p.mu1 * r.a22);
    out.first[i] = -up * df.at_nodes[i] - w * (p.mu2 * r.b11 + p.mu1 * r.c12);
    out.second[i] = -um * dg.at_nodes[i] - w * (p.mu2 * r.b21 + p.mu1 * r.c22);
  });
  return out;
}

RhsPair rhs_htheta(const HThetaState& s, const PhysicalParams& p, const Grid1D& g) {
  const InterfaceState fg = from_htheta(s, p);
  const QuadData q = prepare(fg, p, g);
  const DerivativeSamples dh = derivative_samples(s.h, g);
  const DerivativeSamples dt = derivative_samples(s.theta, g);
  RhsPair out;
  out.first.resize(q.n);
  out.second.resize(q.n);
  const double w = p.delta_rho * q.dx;
  const double mu1 = p.mu1, mu2 = p.mu2, mm = mu1 * mu2;
  parallel_for(q.n, [&](int i) {
    const KernelRow r = kernel_row(q, i, dh.at_midpoints.data(), dt.at_midpoints.data());
    const double up = -w * (mu2 * r.a11 + mu1 * r.a12);
    const double um = -w * (mu2 * r.a21 + mu1 * r.a22);
    const double ih = mu2 * mu2 * r.b11 + mm * r.b12 + mm * r.b21 + mu1 * mu1 * r.b22;
    const double iht = mu2 * (r.c11 - r.c12) - mu1 * (r.c22 - r.c21);
    out.first[i] = -(mu2 * up + mu1 * um) * dh.at_nodes[i] -
                   mm * (up - um) * dt.at_nodes[i] - w * ih - mm * w * iht;
    const double ith = mu2 * (r.b11 - r.b21) - mu1 * (r.b22 - r.b12);
    const double itt = r.c11 + r.c22 - r.c12 - r.c21;
    out.second[i] = -(up - um) * dh.at_nodes[i] - (mu1 * up + mu2 * um) * dt.at_nodes[i] -
                    w * ith - mm * w * itt;
  });
  return out;
}

std::vector<double> rhs_twophase(std::span<const double> f, double rho_jump, const Grid1D& g) {
  if (static_cast<int>(f.size()) != g.n()) {
    throw std::invalid_argument("rhs_twophase: sample count does not match grid");
  }
  const int n = g.n();
  const int mask = n - 1;
  const std::vector<double> fm = shift_half(analyze(f, g), g);
  const DerivativeSamples df = derivative_samples(f, g);
  std::vector<PeriodizedAlpha> pa;
  pa.reserve(n / 2);
  for (int k = 0; k < n / 2; ++k) pa.push_back(make_periodized_alpha(g.alpha(k), g.half_length()));
  std::vector<double> out(n);
  const double w = rho_jump / (2.0 * std::numbers::pi) * g.dx();
  parallel_for(n, [&](int i) {
    const double fi = f[i];
    const double dfi = df.at_nodes[i];
    double acc = 0.0;
    for (int k = 0; k < n / 2; ++k) {
      const int qm = (i - k - 1 + n) & mask;
      const int qp = (i + k) & mask;
      const double km = pa[k].eval(fi - fm[qm]);
      const double kp = -pa[k].eval(fi - fm[qp]);
      acc += km * (dfi - df.at_midpoints[qm]) + kp * (dfi - df.at_midpoints[qp]);
    }
    out[i] = w * acc;
  });
  return out;
}

LinearizedSymbol linearized_symbol(double xi, const PhysicalParams& p) {
  if (xi == 0.0) throw std::domain_error("linearized_symbol: xi must be nonzero");
  const double axi = std::abs(xi);
  const double pref = -p.delta_rho * std::numbers::pi * axi;
  const double E = std::exp(-2.0 * p.sigma * axi);
  LinearizedSymbol sym;
  sym.matrix = {{{pref * p.mu2, pref * p.mu1 * E}, {pref * p.mu2 * E, pref * p.mu1}}};
  const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * p.mu1 * p.mu2 * (1.0 - E * E)));
  sym.eigenvalues = {pref * 0.5 * (1.0 + disc), pref * 0.5 * (1.0 - disc)};
  return sym;
}

}  // namespace muskat
