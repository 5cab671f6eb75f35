#include "muskat/profiles.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "muskat/norms.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

double eval_profile(const ProfileSpec& p, double x) {
  const double r = x - p.center;
  switch (p.kind) {
    case ProfileSpec::Kind::zero:
      return 0.0;
    case ProfileSpec::Kind::gaussian:
      return p.amplitude * std::exp(-(r / p.width) * (r / p.width));
    case ProfileSpec::Kind::cosine:
      return p.amplitude * std::cos(p.width * r);  // width holds the mode number
    case ProfileSpec::Kind::cosbump: {
      if (std::abs(r) >= p.width) return 0.0;
      const double c = std::cos(0.5 * std::numbers::pi * r / p.width);
      return p.amplitude * c * c;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

std::vector<double> sample(const ProfileSpec& p, const Grid1D& g) {
  std::vector<double> u(g.n());
  for (int i = 0; i < g.n(); ++i) u[i] = eval_profile(p, g.node(i));
  return u;
}

void check_tail(const std::vector<double>& u, const Grid1D& g, double tail_tol,
                const char* name) {
  // Compact-support surrogate for decay at infinity: the outer eighth of the
  // domain must sit below the tail tolerance.  Pure cosine modes are periodic
  // by construction and exempt.
  const int n = g.n();
  const int edge = n / 8;
  double worst = 0.0;
  for (int i = 0; i < edge; ++i) {
    worst = std::max(worst, std::abs(u[i]));
    worst = std::max(worst, std::abs(u[n - 1 - i]));
  }
  if (worst > tail_tol) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "init_profile: %s does not decay below the tail tolerance near +/-L "
                  "(max %.3e > %.3e)",
                  name, worst, tail_tol);
    throw std::invalid_argument(msg);
  }
}

bool is_periodic_kind(const ProfileSpec& p) { return p.kind == ProfileSpec::Kind::cosine; }

}  // namespace

InitialData init_profile(const InitialDataSpec& spec, const Grid1D& g, const PhysicalParams& p,
                         int k, double tail_tol) {
  InitialData out;
  out.state.gamma = spec.gamma0;
  out.state.t = 0.0;
  if (!(spec.gamma0 > 0.0)) {
    throw std::invalid_argument("init_profile: gamma0 must be positive");
  }

  if (spec.use_htheta) {
    const auto h = sample(spec.h, g);
    const auto t1 = sample(spec.theta1, g);
    out.state.f.resize(g.n());
    out.state.g.resize(g.n());
    for (int i = 0; i < g.n(); ++i) {
      const double th = p.sigma * t1[i];
      out.state.f[i] = h[i] + p.mu1 * th;
      out.state.g[i] = h[i] - p.mu2 * th;
    }
    if (!is_periodic_kind(spec.h)) check_tail(h, g, tail_tol, "h0");
  } else {
    out.state.f = sample(spec.f, g);
    out.state.g = sample(spec.g, g);
    if (!is_periodic_kind(spec.f)) check_tail(out.state.f, g, tail_tol, "f0");
    if (!is_periodic_kind(spec.g)) check_tail(out.state.g, g, tail_tol, "g0");
  }

  if (min_distance(out.state, p) <= 0.0) {
    throw std::invalid_argument("init_profile: amplitude produces interface collision");
  }

  const HThetaState ht = to_htheta(out.state, p);
  const Spectrum ch = analyze(ht.h, g);
  const Spectrum ct = analyze(ht.theta, g);
  out.hk_energy = hk_gamma_norm(ch, g, k, spec.gamma0) +
                  p.mu1 * p.mu2 * hk_gamma_norm(ct, g, k, spec.gamma0);
  out.theta_ratio =
      std::sqrt(hk_gamma_norm(ct, g, std::max(0, k - 3), spec.gamma0)) / p.sigma;
  return out;
}

}  // namespace muskat
