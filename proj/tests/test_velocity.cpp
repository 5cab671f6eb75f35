#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "muskat/errors.hpp"
#include "muskat/norms.hpp"
#include "muskat/spectral.hpp"
#include "muskat/velocity.hpp"
#include "test_util.hpp"

using namespace muskat;

namespace {

InterfaceState state_of(std::vector<double> f, std::vector<double> g, double gamma = 0.1) {
  InterfaceState s;
  s.f = std::move(f);
  s.g = std::move(g);
  s.gamma = gamma;
  return s;
}

std::vector<double> gaussian(const Grid1D& g, double amp, double width, double center = 0.0) {
  std::vector<double> u(g.n());
  for (int i = 0; i < g.n(); ++i) {
    const double r = (g.node(i) - center) / width;
    u[i] = amp * std::exp(-r * r);
  }
  return u;
}

}  // namespace

TEST_CASE("flat data gives exactly zero velocity and rhs") {
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.1);
  const Grid1D g(std::numbers::pi, 64);
  const std::vector<double> zero(g.n(), 0.0);
  const auto v = compute_velocity(state_of(zero, zero), p, g);
  CHECK(testutil::max_abs(v.u_plus) == 0.0);
  CHECK(testutil::max_abs(v.u_minus) == 0.0);
  const auto r = rhs_fg(state_of(zero, zero), p, g);
  CHECK(testutil::max_abs(r.first) == 0.0);
  CHECK(testutil::max_abs(r.second) == 0.0);
}

TEST_CASE("constant shift of both interfaces gives zero velocity") {
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.1);
  const Grid1D g(std::numbers::pi, 64);
  const std::vector<double> c(g.n(), 0.37);
  const auto v = compute_velocity(state_of(c, c), p, g);
  CHECK(testutil::max_abs(v.u_plus) <= 1e-15);
  CHECK(testutil::max_abs(v.u_minus) <= 1e-15);
}

TEST_CASE("velocity evaluation requires an open gap") {
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.05);
  const Grid1D g(std::numbers::pi, 64);
  std::vector<double> f(g.n(), -0.2), zero(g.n(), 0.0);
  CHECK_THROWS_AS(compute_velocity(state_of(f, zero), p, g), CollisionError);
}

TEST_CASE("single-mode velocity matches the first-order expansion") {
  // hand linearization of (1.9): with f = 0, g = eps cos(k x) the only
  // first-order piece comes through P12, and the transform of
  // alpha/(alpha^2 + a^2)^2 gives u+ = -mu1 drho pi k eps e^{-2 sigma k}
  // sin(k x) + O(eps^2).  With g = 0 and f the mode, the first-order term
  // integrates to zero against the odd kernel, leaving u+ = O(eps^2).
  const PhysicalParams p = make_params(0.0, 0.7, 2.0, 0.1);
  const Grid1D g(std::numbers::pi, 256);
  const double eps = 1e-6;
  const int k = 3;
  std::vector<double> mode(g.n()), zero(g.n(), 0.0);
  for (int i = 0; i < g.n(); ++i) mode[i] = eps * std::cos(k * g.node(i));

  const auto v = compute_velocity(state_of(zero, mode), p, g);
  const double rate = p.mu1 * p.delta_rho * std::numbers::pi * k * std::exp(-2.0 * p.sigma * k);
  double worst = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const double oracle = -rate * eps * std::sin(k * g.node(i));
    worst = std::max(worst, std::abs(v.u_plus[i] - oracle));
  }
  CHECK(worst <= 100.0 * eps * eps);

  const auto vf = compute_velocity(state_of(mode, zero), p, g);
  CHECK(testutil::max_abs(vf.u_plus) <= 100.0 * eps * eps);
}

TEST_CASE("rhs of a single tiny mode matches the linearized symbol") {
  const PhysicalParams p = make_params(0.0, 0.7, 2.0, 0.1);
  const Grid1D g(std::numbers::pi, 256);
  const double eps = 1e-6;
  const int k = 2;
  std::vector<double> f(g.n()), zero(g.n(), 0.0);
  for (int i = 0; i < g.n(); ++i) f[i] = eps * std::cos(k * g.node(i));
  const auto r = rhs_fg(state_of(f, zero), p, g);
  const auto sym = linearized_symbol(static_cast<double>(k), p);
  // with g = 0: rhs_f = M00 f + O(eps^2), rhs_g = M10 f + O(eps^2)
  double num_ff = 0.0, num_gf = 0.0, den = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    num_ff += r.first[i] * f[i];
    num_gf += r.second[i] * f[i];
    den += f[i] * f[i];
  }
  CHECK(num_ff / den == doctest::Approx(sym.matrix[0][0]).epsilon(1e-9));
  CHECK(num_gf / den == doctest::Approx(sym.matrix[1][0]).epsilon(1e-9));
}

TEST_CASE("even data produces even rhs") {
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.2);
  const Grid1D g(std::numbers::pi, 128);
  const auto f = gaussian(g, 0.05, 0.5);
  const auto h = gaussian(g, -0.03, 0.7);
  const auto r = rhs_fg(state_of(f, h), p, g);
  const double scale = std::max(testutil::max_abs(r.first), testutil::max_abs(r.second));
  for (int i = 1; i < g.n(); ++i) {
    const int j = g.n() - i;
    CHECK(std::abs(r.first[i] - r.first[j % g.n()]) <= 1e-12 * scale);
    CHECK(std::abs(r.second[i] - r.second[j % g.n()]) <= 1e-12 * scale);
  }
}

TEST_CASE("translation by one node is equivariant to rounding") {
  std::mt19937_64 rng(29);
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.2);
  const Grid1D g(std::numbers::pi, 128);
  auto f = testutil::band_limited(rng, g, 10, 0.02);
  auto h = testutil::band_limited(rng, g, 10, 0.02);
  const auto r = rhs_fg(state_of(f, h), p, g);
  // shift both fields by one node
  std::vector<double> fs(g.n()), hs(g.n());
  for (int i = 0; i < g.n(); ++i) {
    fs[i] = f[(i - 1 + g.n()) % g.n()];
    hs[i] = h[(i - 1 + g.n()) % g.n()];
  }
  const auto rs = rhs_fg(state_of(fs, hs), p, g);
  const double scale = std::max(testutil::max_abs(r.first), testutil::max_abs(r.second));
  for (int i = 0; i < g.n(); ++i) {
    CHECK(std::abs(rs.first[i] - r.first[(i - 1 + g.n()) % g.n()]) <= 1e-12 * scale);
    CHECK(std::abs(rs.second[i] - r.second[(i - 1 + g.n()) % g.n()]) <= 1e-12 * scale);
  }
}

TEST_CASE("fg and htheta systems are consistent") {
  std::mt19937_64 rng(37);
  const PhysicalParams p = make_params(0.0, 0.6, 2.0, 0.15);
  const Grid1D g(std::numbers::pi, 128);
  for (int trial = 0; trial < 5; ++trial) {
    InterfaceState s;
    s.f = testutil::band_limited(rng, g, 8, 1e-3);
    s.g = testutil::band_limited(rng, g, 8, 1e-3);
    s.gamma = 0.1;
    const auto rfg = rhs_fg(s, p, g);
    const auto rht = rhs_htheta(to_htheta(s, p), p, g);
    double scale = 0.0, worst_h = 0.0, worst_t = 0.0;
    for (int i = 0; i < g.n(); ++i) {
      const double comb_h = p.mu2 * rfg.first[i] + p.mu1 * rfg.second[i];
      const double comb_t = rfg.first[i] - rfg.second[i];
      scale = std::max({scale, std::abs(rht.first[i]), std::abs(rht.second[i])});
      worst_h = std::max(worst_h, std::abs(comb_h - rht.first[i]));
      worst_t = std::max(worst_t, std::abs(comb_t - rht.second[i]));
    }
    CHECK(worst_h <= 1e-10 * scale);
    CHECK(worst_t <= 1e-10 * scale);
  }
}

TEST_CASE("theta rhs equals the fg difference even when theta = 0") {
  // P12 != P21 at sigma > 0, so dtheta/dt need not vanish for f = g
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.2);
  const Grid1D g(std::numbers::pi, 128);
  const auto f = gaussian(g, 0.01, 0.5);
  const auto rfg = rhs_fg(state_of(f, f), p, g);
  const auto rht = rhs_htheta(to_htheta(state_of(f, f), p), p, g);
  double worst = 0.0, amp = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    worst = std::max(worst, std::abs(rfg.first[i] - rfg.second[i] - rht.second[i]));
    amp = std::max(amp, std::abs(rht.second[i]));
  }
  CHECK(amp > 0.0);  // the gap perturbation is driven even from theta = 0
  CHECK(worst <= 1e-12 * testutil::max_abs(rfg.first));
}

TEST_CASE("mean of rhs is second order in the amplitude") {
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.2);
  const Grid1D g(std::numbers::pi, 128);
  for (double eps : {1e-4, 1e-5}) {
    const auto f = gaussian(g, eps, 0.5);
    const auto h = gaussian(g, -0.7 * eps, 0.6);
    const auto r = rhs_fg(state_of(f, h), p, g);
    double mean_f = 0.0, mean_g = 0.0;
    for (int i = 0; i < g.n(); ++i) {
      mean_f += r.first[i];
      mean_g += r.second[i];
    }
    mean_f *= g.dx();
    mean_g *= g.dx();
    CHECK(std::abs(mean_f) <= 50.0 * eps * eps);
    CHECK(std::abs(mean_g) <= 50.0 * eps * eps);
  }
}

TEST_CASE("velocity quadrature converges spectrally") {
  // sigma = 0.05 puts the kernel feature right at the n = 128 resolution
  // limit, so the error is quadrature-dominated until it hits rounding
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.05);
  auto prof = [](double x) { return 0.05 * std::exp(-std::pow(x / 0.5, 2)); };
  auto prof2 = [](double x) { return -0.04 * std::exp(-std::pow((x - 0.2) / 0.45, 2)); };
  const Grid1D gref(std::numbers::pi, 4096);
  std::vector<double> fref(gref.n()), gref_(gref.n());
  for (int i = 0; i < gref.n(); ++i) {
    fref[i] = prof(gref.node(i));
    gref_[i] = prof2(gref.node(i));
  }
  const auto vref = compute_velocity(state_of(fref, gref_), p, gref);

  double prev_err = 0.0;
  bool first = true;
  for (int n : {128, 256, 512}) {
    const Grid1D g(std::numbers::pi, n);
    std::vector<double> f(n), gg(n);
    for (int i = 0; i < n; ++i) {
      f[i] = prof(g.node(i));
      gg[i] = prof2(g.node(i));
    }
    const auto v = compute_velocity(state_of(f, gg), p, g);
    double err = 0.0;
    const int ratio = gref.n() / n;
    for (int i = 0; i < n; ++i) {
      err = std::max(err, std::abs(v.u_plus[i] - vref.u_plus[i * ratio]));
    }
    if (!first && err > 1e-14) {
      CHECK(prev_err / err > 10.0);  // far better than tenfold per doubling
    }
    first = false;
    prev_err = err;
  }
  CHECK(prev_err <= 1e-11);  // n = 512 is already at the rounding floor
}

TEST_CASE("two-phase rhs basics") {
  const Grid1D g(std::numbers::pi, 128);
  const std::vector<double> zero(g.n(), 0.0);
  CHECK(testutil::max_abs(rhs_twophase(zero, 2.0, g)) == 0.0);
  const std::vector<double> c(g.n(), 1.3);
  CHECK(testutil::max_abs(rhs_twophase(c, 2.0, g)) <= 1e-15);

  // eps cos(k x) decays at rate (rho2 - rho0)/2 * k
  const double eps = 1e-6;
  const int k = 2;
  std::vector<double> f(g.n());
  for (int i = 0; i < g.n(); ++i) f[i] = eps * std::cos(k * g.node(i));
  const auto r = rhs_twophase(f, 2.0, g);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    num += r[i] * f[i];
    den += f[i] * f[i];
  }
  CHECK(num / den == doctest::Approx(-k).epsilon(1e-9));  // -(2/2) * k
}

TEST_CASE("linearized symbol limits") {
  PhysicalParams p = make_params(0.0, 0.5, 2.0, 0.1);  // mu1 = 0.75, mu2 = 0.25
  const double xi = 3.0;
  const double cpref = p.delta_rho * std::numbers::pi;  // = (rho2 - rho0)/2

  // sigma -> 0: eigenvalues {-c |xi|, 0}
  PhysicalParams p0 = p;
  p0.sigma = 0.0;
  const auto s0 = linearized_symbol(xi, p0);
  CHECK(s0.eigenvalues[0] == doctest::Approx(-cpref * xi).epsilon(1e-14));
  CHECK(s0.eigenvalues[1] == doctest::Approx(0.0));

  // sigma large: decoupled interfaces
  PhysicalParams pinf = p;
  pinf.sigma = 40.0;
  const auto sinf = linearized_symbol(xi, pinf);
  CHECK(sinf.eigenvalues[0] == doctest::Approx(-cpref * xi * p.mu1).epsilon(1e-12));
  CHECK(sinf.eigenvalues[1] == doctest::Approx(-cpref * xi * p.mu2).epsilon(1e-12));

  // equal mu closed form
  const PhysicalParams peq = make_params(0.0, 1.0, 2.0, 0.1);
  const auto seq = linearized_symbol(xi, peq);
  const double E = std::exp(-2.0 * peq.sigma * xi);
  CHECK(seq.eigenvalues[0] == doctest::Approx(-cpref * xi * (1.0 + E) / 2.0).epsilon(1e-14));
  CHECK(seq.eigenvalues[1] == doctest::Approx(-cpref * xi * (1.0 - E) / 2.0).epsilon(1e-14));

  CHECK_THROWS_AS(linearized_symbol(0.0, p), std::domain_error);
}
