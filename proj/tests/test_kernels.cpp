#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "muskat/kernels.hpp"
#include "muskat/params.hpp"

using namespace muskat;

namespace {

RealArgs flat_args(double dx, double sigma) {
  RealArgs a;
  a.dx = dx;
  a.sigma = sigma;
  return a;
}

// consistent random configuration, no smallness restriction
RealArgs random_args(std::mt19937_64& rng, double scale = 0.3) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RealArgs a;
  a.sigma = 0.05 + std::abs(u(rng));
  a.dx = 0.0;
  while (std::abs(a.dx) < 1e-3) a.dx = 3.0 * u(rng);
  a.fx = u(rng);
  a.fx1 = u(rng);
  a.gx = u(rng);
  a.gx1 = u(rng);
  a.thx = a.fx - a.gx;
  a.thx1 = a.fx1 - a.gx1;
  a.dfx1 = u(rng);
  a.dgx1 = u(rng);
  a.dthx1 = a.dfx1 - a.dgx1;
  return a;
}

}  // namespace

TEST_CASE("eval_P flat-data values") {
  // pure 1/dx kernel
  CHECK(eval_P(PKernel::P11, flat_args(2.0, 0.1)) == doctest::Approx(0.5));
  // P12 with f = g = 0, sigma = 1/2, dx = 1 -> 1/(1+1)
  CHECK(eval_P(PKernel::P12, flat_args(1.0, 0.5)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(eval_P(PKernel::P11, flat_args(0.0, 0.1)), std::domain_error);
}

TEST_CASE("P12(x, x1) and P21(x1, x) share the denominator") {
  // swapping the arguments of P21 reproduces P12 up to the odd Delta x
  // factor: P12(x, x1) = -P21(x1, x); checked by brute force
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const RealArgs a = random_args(rng);
    RealArgs swapped = a;
    swapped.dx = -a.dx;
    std::swap(swapped.fx, swapped.fx1);
    std::swap(swapped.gx, swapped.gx1);
    std::swap(swapped.thx, swapped.thx1);
    const double p12 = eval_P(PKernel::P12, a);
    const double p21 = eval_P(PKernel::P21, swapped);
    CHECK(p12 == doctest::Approx(-p21).epsilon(1e-13));
  }
}

TEST_CASE("decomposition flat cases") {
  RealArgs a = flat_args(2.0, 0.1);
  const auto d = eval_decomposition(a);
  CHECK(d.K11 == doctest::Approx(0.25));
  CHECK(d.J11 == 0.0);

  // dx^2 = (2 sigma)^2 cancellation in K12
  RealArgs b = flat_args(1.0, 0.5);
  const auto db = eval_decomposition(b);
  CHECK(db.K12 == doctest::Approx(0.0));
}

TEST_CASE("decomposition matches finite differences of P") {
  // spot check; the full six-way convergence study runs in the verify suite
  auto fprof = [](double x) { return 0.3 * std::sin(x); };
  auto gprof = [](double x) { return 0.2 * std::cos(x); };
  const double x = 0.9, x1 = -0.3, sigma = 0.25;
  auto args_at = [&](double xx, double xx1) {
    RealArgs a;
    a.dx = xx - xx1;
    a.sigma = sigma;
    a.fx = fprof(xx);
    a.fx1 = fprof(xx1);
    a.gx = gprof(xx);
    a.gx1 = gprof(xx1);
    a.thx = a.fx - a.gx;
    a.thx1 = a.fx1 - a.gx1;
    a.dfx1 = 0.3 * std::cos(xx1);
    a.dgx1 = -0.2 * std::sin(xx1);
    a.dthx1 = a.dfx1 - a.dgx1;
    return a;
  };
  const auto d = eval_decomposition(args_at(x, x1));
  const double rho = 1e-5;
  auto fd = [&](PKernel k) {
    return (eval_P(k, args_at(x, x1 + rho)) - eval_P(k, args_at(x, x1 - rho))) / (2.0 * rho);
  };
  CHECK(fd(PKernel::P11) == doctest::Approx(d.K11 + d.J11).epsilon(1e-8));
  CHECK(fd(PKernel::P22) == doctest::Approx(d.K22 + d.J22).epsilon(1e-8));
  CHECK(fd(PKernel::P12) == doctest::Approx(d.K12 + d.J12).epsilon(1e-8));
  CHECK(fd(PKernel::P21) == doctest::Approx(d.K21 + d.J21).epsilon(1e-8));
  CHECK(fd(PKernel::P12) == doctest::Approx(d.Kt12 + d.Jt12).epsilon(1e-8));
  CHECK(fd(PKernel::P21) == doctest::Approx(d.Kt21 + d.Jt21).epsilon(1e-8));
}

TEST_CASE("both splittings of dP12 and dP21 agree") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const RealArgs a = random_args(rng);
    const auto d = eval_decomposition(a);
    CHECK(d.K12 + d.J12 == doctest::Approx(d.Kt12 + d.Jt12).epsilon(1e-11));
    CHECK(d.K21 + d.J21 == doctest::Approx(d.Kt21 + d.Jt21).epsilon(1e-11));
  }
}

TEST_CASE("F0 and G0 at dx = 2 sigma = 1") {
  CHECK(poly_F0(1.0, 1.0) == doctest::Approx(16.0));
  CHECK(poly_G0(1.0, 1.0) == doctest::Approx(16.0));
  RealArgs a = flat_args(1.0, 0.5);
  const auto [kf, ef] = eval_Kf_ef(a);
  CHECK(kf == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ef == 0.0);
}

TEST_CASE("e_f vanishes with theta") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int i = 0; i < 100; ++i) {
    RealArgs a = flat_args(1.3, 0.2);
    a.fx = u(rng);
    a.fx1 = u(rng);
    a.gx = a.fx;  // theta = 0
    a.gx1 = a.fx1;
    const auto [kf, ef] = eval_Kf_ef(a);
    (void)kf;
    CHECK(ef == 0.0);
  }
}

TEST_CASE("frozen rational oracles for K_f and e_f") {
  // exact rational evaluations of F/G and e_f, frozen from exact arithmetic
  {
    RealArgs a;
    a.dx = 1.0;
    a.sigma = 0.5;  // 2 sigma = 1
    // w1 = 0.1, w2 = 0.02, w3 = -0.01
    a.fx = 0.02;  // theta(x) with g(x) = 0
    a.gx = 0.0;
    a.fx1 = a.fx - 0.1;    // Delta f = w1 dx
    a.gx1 = a.fx1 + 0.01;  // theta(x1) = -0.01
    a.thx = 0.02;
    a.thx1 = -0.01;
    const auto [kf, ef] = eval_Kf_ef(a);
    CHECK(kf == doctest::Approx(0.98993549398956830985).epsilon(1e-14));
    CHECK(ef == doctest::Approx(0.0014995173808441153964).epsilon(1e-13));
  }
  {
    RealArgs a;
    a.dx = -1.5;
    a.sigma = 0.1;  // 2 sigma = 0.2
    // w1 = -0.05, w2 = 0.005, w3 = 0.0125
    a.thx = 0.2 * 0.005;
    a.thx1 = 0.2 * 0.0125;
    a.fx = a.thx;
    a.gx = 0.0;
    a.fx1 = a.fx - (-0.05) * (-1.5);
    a.gx1 = a.fx1 - a.thx1;
    const auto [kf, ef] = eval_Kf_ef(a);
    CHECK(kf == doctest::Approx(0.023073194247494186649).epsilon(1e-14));
    CHECK(ef == doctest::Approx(0.000039661996521593841056).epsilon(1e-12));
  }
}

TEST_CASE("lemma identity against independent kernel route") {
  std::mt19937_64 rng(31);
  double worst_f = 0.0, worst_g = 0.0;
  for (int i = 0; i < 20000; ++i) {
    RealArgs a = random_args(rng, 0.05);
    const auto d = eval_decomposition(a);
    {
      const auto [kf, ef] = eval_Kf_ef(a);
      const double lhs = d.kf_combo();
      const double rhs = kf + ef;
      worst_f = std::max(worst_f, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
    }
    {
      const auto [kg, eg] = eval_Kg_eg(a);
      const double lhs = d.kg_combo();
      const double rhs = kg + eg;
      worst_g = std::max(worst_g, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
    }
  }
  CHECK(worst_f <= 1e-10);
  CHECK(worst_g <= 1e-10);
}

TEST_CASE("unperturbed dissipation kernels") {
  const PhysicalParams p = make_params(0.0, 1.0, 2.0, 0.5);  // mu = 1/2, 2 sigma = 1
  const auto [d11, d22] = eval_D0(1.0, p);
  CHECK(d11 == doctest::Approx(0.5));  // middle term vanishes at dx = 2 sigma
  CHECK(d22 == doctest::Approx(2.0));

  // large-dx asymptotics: D22_0 * dx^4 / (2 sigma)^2 -> 6
  const PhysicalParams q = make_params(0.0, 1.0, 2.0, 0.05);
  const double s = 2.0 * q.sigma;
  for (double dx : {50.0, 200.0, 1000.0}) {
    const auto [a, b] = eval_D0(dx, q);
    (void)a;
    CHECK(b * dx * dx * dx * dx / (s * s) == doctest::Approx(6.0).epsilon(30.0 / (dx * dx)));
  }
  CHECK_THROWS_AS(eval_D0(0.0, p), std::domain_error);
}

TEST_CASE("antisymmetric combination closed form") {
  // factor (Delta f + Delta g) kills the combination
  RealArgs a = flat_args(0.7, 0.2);
  a.fx = 0.3;
  a.fx1 = 0.3;  // f and g constant
  a.gx = 0.3;
  a.gx1 = 0.3;
  CHECK(eval_antisym(a) == 0.0);

  // f = -g pointwise with equal endpoint values
  RealArgs b = flat_args(1.1, 0.3);
  b.fx = 0.1;
  b.fx1 = 0.1;
  b.gx = -0.1;
  b.gx1 = -0.1;
  b.thx = 0.2;
  b.thx1 = 0.2;
  CHECK(eval_antisym(b) == 0.0);

  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    const RealArgs c = random_args(rng, 0.1);
    const double anti = eval_antisym(c);
    const double sub = eval_P(PKernel::P12, c) - eval_P(PKernel::P21, c);
    const double denom = std::max(
        std::abs(anti), std::abs(eval_P(PKernel::P12, c)) + std::abs(eval_P(PKernel::P21, c)));
    CHECK(std::abs(anti - sub) <= 1e-12 * denom);
  }
}

TEST_CASE("complex-argument kernels agree with real ones on the real line") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const RealArgs a = random_args(rng);
    ComplexArgs c;
    c.dx = a.dx;
    c.sigma = a.sigma;
    c.fx = a.fx;
    c.fx1 = a.fx1;
    c.gx = a.gx;
    c.gx1 = a.gx1;
    c.thx = a.thx;
    c.thx1 = a.thx1;
    c.dfx1 = a.dfx1;
    c.dgx1 = a.dgx1;
    c.dthx1 = a.dthx1;
    const auto dr = eval_decomposition(a);
    const auto dc = eval_decomposition(c);
    CHECK(dc.K11.imag() == 0.0);
    CHECK(dc.K11.real() == doctest::Approx(dr.K11).epsilon(1e-15));
    CHECK(dc.Kt21.real() == doctest::Approx(dr.Kt21).epsilon(1e-15));
  }
}

TEST_CASE("periodized kernel sums the images of the rational kernel") {
  // brute-force image sum as the oracle, with the analytic O(1/M) tail
  const double L = 3.0;
  const int M = 200000;
  for (double alpha : {0.4, -1.2, 2.9}) {
    for (double c : {0.0, 0.3, 1.7}) {
      double oracle = 0.0;
      for (int m = M; m >= 1; --m) {
        const double bp = alpha + 2.0 * L * m;
        const double bm = alpha - 2.0 * L * m;
        oracle += bp / (bp * bp + c * c) + bm / (bm * bm + c * c);
      }
      oracle += alpha / (alpha * alpha + c * c);
      // pair sums behave like -alpha / (2 L^2 m^2); tail ~ -alpha/(2 L^2 M)
      oracle -= alpha / (2.0 * L * L * M);
      CHECK(periodized_pv_kernel(alpha, c, L) == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
}
