#include "muskat/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "muskat/errors.hpp"

namespace muskat {

namespace {

void check_guard(const Grid1D& g, double gamma) {
  const double arg = 2.0 * gamma * g.xi_max();
  if (arg > kCoshArgMax) {
    throw ResolutionLossError("cosh weight overflow: 2*gamma*xi_max = " + std::to_string(arg) +
                              " > " + std::to_string(kCoshArgMax) +
                              " (gamma = " + std::to_string(gamma) +
                              ", xi_max = " + std::to_string(g.xi_max()) + ")");
  }
  if (gamma < 0.0) {
    throw std::invalid_argument("negative strip width");
  }
}

double coeff_floor_of(const Spectrum& c) {
  double peak = 0.0;
  for (const auto& v : c) peak = std::max(peak, std::abs(v));
  return kCoeffFloor * peak;
}

}  // namespace

double hk_gamma_norm(const Spectrum& c, const Grid1D& g, int k, double gamma) {
  if (k < 0) throw std::invalid_argument("hk_gamma_norm: negative order");
  check_guard(g, gamma);
  const double floor = coeff_floor_of(c);
  const double twoL = 2.0 * g.half_length();
  double total = 0.0;
  for (int m = 0; m < g.n(); ++m) {
    const double a = std::abs(c[m]);
    if (a <= floor) continue;
    const double xi = g.xi(m);
    // sum_{j=0..k} |xi|^{2j}, times the two-trace weight
    double wk = 1.0, xs = xi * xi, term = 1.0;
    for (int j = 1; j <= k; ++j) {
      term *= xs;
      wk += term;
    }
    total += twoL * wk * a * a * 2.0 * std::cosh(2.0 * gamma * xi);
  }
  return total;
}

double linf_gamma_norm(const Spectrum& c, const Grid1D& g, double gamma) {
  check_guard(g, gamma);
  const double floor = coeff_floor_of(c);
  const int n = g.n();
  Spectrum up(n), dn(n);
  for (int m = 0; m < n; ++m) {
    if (std::abs(c[m]) <= floor) continue;
    const double w = std::exp(-gamma * g.xi(m));  // trace at x + i*gamma
    up[m] = c[m] * w;
    dn[m] = c[m] / w;
  }
  // Boundary traces of a real field are complex; synthesize both parts.
  double best = 0.0;
  for (const Spectrum* s : {&up, &dn}) {
    Spectrum re = *s;
    Spectrum im(n);
    for (int m = 0; m < n; ++m) im[m] = std::complex<double>(0, -1) * (*s)[m];
    const auto tr = synthesize(re, g);
    const auto ti = synthesize(im, g);
    for (int i = 0; i < n; ++i) {
      best = std::max(best, std::hypot(tr[i], ti[i]));
    }
  }
  return best;
}

double diss_theta_weight(double xi, double sigma) {
  const double axi = std::abs(xi);
  const double u = 2.0 * sigma * axi;
  if (u == 0.0) return 0.0;
  if (u < 1e-3) {
    // (u - 1 + e^-u)/u = u/2 - u^2/6 + u^3/24 - ...
    return axi * u * (0.5 + u * (-1.0 / 6.0 + u / 24.0));
  }
  return axi * (u + std::expm1(-u)) / u;
}

double diss_h_block(const Spectrum& c, const Grid1D& g, int k, double gamma,
                    const PhysicalParams& p) {
  check_guard(g, gamma);
  const double floor = coeff_floor_of(c);
  const double fourL = 4.0 * g.half_length();
  double total = 0.0;
  for (int m = 0; m < g.n(); ++m) {
    const double a = std::abs(c[m]);
    if (a <= floor) continue;
    const double xi = g.xi(m);
    const double axi = std::abs(xi);
    const double one_minus_e = -std::expm1(-2.0 * p.sigma * axi);  // 1 - e^{-2 sigma |xi|}
    const double d11w = axi * (1.0 - 2.0 * p.mu1 * p.mu2 * one_minus_e);
    const double w = std::numbers::pi * d11w * std::pow(xi * xi, k);
    total += fourL * w * a * a * 2.0 * std::cosh(2.0 * gamma * xi);
  }
  return total;
}

double diss_theta_block(const Spectrum& c, const Grid1D& g, int k, double gamma, double sigma) {
  check_guard(g, gamma);
  const double floor = coeff_floor_of(c);
  const double fourL = 4.0 * g.half_length();
  double total = 0.0;
  for (int m = 0; m < g.n(); ++m) {
    const double a = std::abs(c[m]);
    if (a <= floor) continue;
    const double xi = g.xi(m);
    const double w = std::numbers::pi * diss_theta_weight(xi, sigma) * std::pow(xi * xi, k);
    total += fourL * w * a * a * 2.0 * std::cosh(2.0 * gamma * xi);
  }
  return total;
}

double diss_k(const Spectrum& h, const Spectrum& theta, const Grid1D& g, int k, double gamma,
              const PhysicalParams& p) {
  const double mm = p.mu1 * p.mu2;
  return std::sqrt(diss_h_block(h, g, k, gamma, p) +
                   mm * mm * diss_theta_block(theta, g, k, gamma, p.sigma));
}

double energy_E(const HThetaState& s, const Grid1D& g, int k, const PhysicalParams& p) {
  if (k < 3) throw std::invalid_argument("energy_E requires k >= 3");
  const Spectrum ch = analyze(s.h, g);
  const Spectrum ct = analyze(s.theta, g);
  const Spectrum ct1 = analyze(s.theta1, g);
  return hk_gamma_norm(ch, g, k, s.gamma) + p.mu1 * p.mu2 * hk_gamma_norm(ct, g, k, s.gamma) +
         hk_gamma_norm(ct1, g, k - 3, s.gamma);
}

std::optional<double> strip_width_estimate(const Spectrum& c, const Grid1D& g) {
  const double floor = coeff_floor_of(c);
  if (floor == 0.0) return std::nullopt;
  // One point per |xi| band: max of |c| over the +/- m pair.
  std::vector<std::pair<double, double>> pts;  // (|xi|, log|c|)
  const int n = g.n();
  for (int m = 1; m < n / 2; ++m) {
    const double a = std::max(std::abs(c[m]), std::abs(c[n - m]));
    if (a > floor) {
      pts.emplace_back(g.xi(m), std::log(a));
    }
  }
  if (pts.size() < 3) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nn = static_cast<double>(pts.size());
  const double det = nn * sxx - sx * sx;
  if (det == 0.0) return std::nullopt;
  const double slope = (nn * sxy - sx * sy) / det;
  return -slope;
}

std::string NormReport::csv_header() {
  return "t,gamma,E,hk_h,hk_theta,hk_theta1,linf_dxh,linf_dxtheta,diss_k,min_distance,"
         "strip_estimate";
}

std::string NormReport::csv_row() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,", t, gamma, energy,
                hk_h, hk_theta, hk_theta1, linf_dxh, linf_dxtheta, diss, min_dist);
  std::string row(buf);
  if (strip_estimate) {
    std::snprintf(buf, sizeof(buf), "%.17g", *strip_estimate);
    row += buf;
  } else {
    row += "nan";
  }
  return row;
}

NormReport compute_report(const HThetaState& s, const Grid1D& g, const PhysicalParams& p,
                          int k) {
  NormReport r;
  r.t = s.t;
  r.gamma = s.gamma;
  Spectrum ch = analyze(s.h, g);
  Spectrum ct = analyze(s.theta, g);
  const Spectrum ct1 = analyze(s.theta1, g);
  r.hk_h = hk_gamma_norm(ch, g, k, s.gamma);
  r.hk_theta = hk_gamma_norm(ct, g, k, s.gamma);
  r.hk_theta1 = hk_gamma_norm(ct1, g, std::max(0, k - 3), s.gamma);
  r.energy = r.hk_h + p.mu1 * p.mu2 * r.hk_theta + r.hk_theta1;
  // floor before differentiating so xi does not lift noise over the floor
  apply_coeff_floor(ch, kCoeffFloor);
  apply_coeff_floor(ct, kCoeffFloor);
  r.linf_dxh = linf_gamma_norm(derivative(ch, g), g, s.gamma);
  r.linf_dxtheta = linf_gamma_norm(derivative(ct, g), g, s.gamma);
  r.diss = diss_k(ch, ct, g, k, s.gamma, p);
  r.min_dist = min_distance(s, p);
  r.strip_estimate = strip_width_estimate(ch, g);
  return r;
}

}  // namespace muskat
