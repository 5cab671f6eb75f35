#include "muskat/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace muskat {

namespace {

// Process-wide plan cache.  Plans are created once per size with
// FFTW_ESTIMATE (deterministic) and executed on caller buffers.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, pp] : plans_) {
      fftw_destroy_plan(pp.fwd);
      fftw_destroy_plan(pp.bwd);
    }
  }

  PlanPair get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> buf(n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_[n] = pp;
    return pp;
  }

 private:
  std::mutex mu_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(fftw_plan plan, std::complex<double>* data) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

int signed_mode(int m, int n) { return (m <= n / 2) ? m : m - n; }

}  // namespace

Spectrum analyze(std::span<const double> u, const Grid1D& g) {
  const int n = g.n();
  if (static_cast<int>(u.size()) != n) {
    throw std::invalid_argument("analyze: sample count does not match grid");
  }
  Spectrum c(n);
  for (int i = 0; i < n; ++i) c[i] = u[i];
  execute(cache().get(n).fwd, c.data());
  // Grid starts at -L: coefficient of e^{i xi_m x} picks up (-1)^m / n.
  const double inv = 1.0 / n;
  for (int m = 0; m < n; ++m) {
    c[m] *= (m % 2 == 0) ? inv : -inv;
  }
  return c;
}

std::vector<double> synthesize(const Spectrum& c, const Grid1D& g) {
  const int n = g.n();
  if (static_cast<int>(c.size()) != n) {
    throw std::invalid_argument("synthesize: coefficient count does not match grid");
  }
  Spectrum d(n);
  for (int m = 0; m < n; ++m) {
    d[m] = (m % 2 == 0) ? c[m] : -c[m];
  }
  execute(cache().get(n).bwd, d.data());
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = d[i].real();
  return u;
}

Spectrum derivative(const Spectrum& c, const Grid1D& g, int order) {
  const int n = g.n();
  Spectrum d(n);
  for (int m = 0; m < n; ++m) {
    if (m == n / 2) continue;  // ambiguous Nyquist
    const std::complex<double> ixi(0.0, g.xi(m));
    std::complex<double> w = 1.0;
    for (int j = 0; j < order; ++j) w *= ixi;
    d[m] = w * c[m];
  }
  return d;
}

std::vector<double> shift_half(const Spectrum& c, const Grid1D& g) {
  const int n = g.n();
  Spectrum d(n);
  for (int m = 0; m < n; ++m) {
    if (m == n / 2) continue;
    const int k = signed_mode(m, n);
    const double phase = std::numbers::pi * k / n;  // xi_m * dx / 2
    d[m] = c[m] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return synthesize(d, g);
}

void dealias(Spectrum& c, const Grid1D& g) {
  const int n = g.n();
  const int keep = n / 3;
  for (int m = 0; m < n; ++m) {
    if (std::abs(signed_mode(m, n)) > keep) c[m] = 0.0;
  }
}

void apply_coeff_floor(Spectrum& c, double relative_floor) {
  double peak = 0.0;
  for (const auto& v : c) peak = std::max(peak, std::abs(v));
  const double floor = relative_floor * peak;
  for (auto& v : c) {
    if (std::abs(v) <= floor) v = 0.0;
  }
}

double spectral_tail(const Spectrum& c, const Grid1D& g) {
  const int n = g.n();
  const int keep = n / 3;
  const int band_lo = (4 * keep) / 5;
  double peak = 0.0, tail = 0.0;
  for (int m = 0; m < n; ++m) {
    const int k = std::abs(signed_mode(m, n));
    const double a = std::abs(c[m]);
    if (a > peak) peak = a;
    if (k >= band_lo && k <= keep && a > tail) tail = a;
  }
  if (peak == 0.0) return 0.0;
  return tail / peak;
}

DerivativeSamples derivative_samples(std::span<const double> u, const Grid1D& g) {
  Spectrum c = analyze(u, g);
  dealias(c, g);
  Spectrum d = derivative(c, g);
  DerivativeSamples out;
  out.at_nodes = synthesize(d, g);
  out.at_midpoints = shift_half(d, g);
  return out;
}

}  // namespace muskat
