#include "muskat/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace muskat {

HThetaState to_htheta(const InterfaceState& s, const PhysicalParams& p) {
  if (s.f.size() != s.g.size()) {
    throw std::invalid_argument("to_htheta: f and g sizes differ");
  }
  const std::size_t n = s.f.size();
  HThetaState out;
  out.h.resize(n);
  out.theta.resize(n);
  out.theta1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.h[i] = p.mu2 * s.f[i] + p.mu1 * s.g[i];
    out.theta[i] = s.f[i] - s.g[i];
    out.theta1[i] = out.theta[i] / p.sigma;
  }
  out.gamma = s.gamma;
  out.t = s.t;
  return out;
}

InterfaceState from_htheta(const HThetaState& s, const PhysicalParams& p) {
  if (s.h.size() != s.theta.size()) {
    throw std::invalid_argument("from_htheta: h and theta sizes differ");
  }
  const std::size_t n = s.h.size();
  InterfaceState out;
  out.f.resize(n);
  out.g.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.f[i] = s.h[i] + p.mu1 * s.theta[i];
    out.g[i] = s.h[i] - p.mu2 * s.theta[i];
  }
  out.gamma = s.gamma;
  out.t = s.t;
  return out;
}

double min_distance(const InterfaceState& s, const PhysicalParams& p) {
  double m = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < s.f.size(); ++i) {
    const double d = s.f[i] - s.g[i];
    if (first || d < m) {
      m = d;
      first = false;
    }
  }
  return 2.0 * p.sigma + m;
}

double min_distance(const HThetaState& s, const PhysicalParams& p) {
  const double m = s.theta.empty() ? 0.0 : *std::min_element(s.theta.begin(), s.theta.end());
  return 2.0 * p.sigma + m;
}

}  // namespace muskat
