#pragma once

#include <string>
#include <vector>

#include "muskat/grid.hpp"
#include "muskat/norms.hpp"
#include "muskat/params.hpp"
#include "muskat/state.hpp"

namespace muskat {

enum class Termination { horizon, resolution_loss, collision, width_collapse, nan_detected };
const char* to_string(Termination t);

struct StepperConfig {
  // dt > 0 selects a fixed step; otherwise dt = cfl * dx / delta_rho.
  double dt = 0.0;
  double cfl = 0.3;
  double C2 = 1.0;       // width-ODE constant
  double gamma0 = 0.1;
  double horizon = 0.5;  // stop time T
  int k = 3;             // monitoring order
  double report_interval = 0.05;
  double spectral_tail_threshold = 1e-6;
  double collision_factor = 0.5;  // stop when gap < factor * sigma
  double gamma_floor = 1e-3;
};

/// gamma' = -C2 (||dx h||_{Linf_gamma} + ||dx theta||_{Linf_gamma}) / (2 tanh 2 gamma).
double gamma_rhs(double forcing, double gamma, double C2);

/// One explicit RK4 step of the coupled (h, theta, gamma) system; gamma is
/// advanced with stage-updated norms (the Linf forcing is re-evaluated at
/// every stage state).
HThetaState step(const HThetaState& s, const StepperConfig& cfg,
                 const PhysicalParams& p, const Grid1D& g, double dt);

// Generic classical RK4 stage driver, shared with the scalar gamma-ODE tests.
// axpy(y, a, k) returns y + a*k; the derivative type may differ from State.
template <typename State, typename Rhs, typename Axpy>
State rk4_step(const State& y, double dt, Rhs&& rhs, Axpy&& axpy) {
  const auto k1 = rhs(y);
  const auto k2 = rhs(axpy(y, 0.5 * dt, k1));
  const auto k3 = rhs(axpy(y, 0.5 * dt, k2));
  const auto k4 = rhs(axpy(y, dt, k3));
  State out = axpy(y, dt / 6.0, k1);
  out = axpy(out, dt / 3.0, k2);
  out = axpy(out, dt / 3.0, k3);
  out = axpy(out, dt / 6.0, k4);
  return out;
}

struct Snapshot {
  HThetaState state;
  NormReport report;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  Termination termination = Termination::horizon;
  double lifespan = 0.0;
};

/// Integrate until the horizon or the first stop condition; a NormReport is
/// recorded every cfg.report_interval (and at the final state).
Trajectory run(const HThetaState& initial, const StepperConfig& cfg,
               const PhysicalParams& p, const Grid1D& g);

struct BootstrapReport {
  double energy_ratio_sup = 1.0;  // sup_t (|h|^2 + mu1 mu2 |theta|^2) / initial
  double theta_ratio_sup = 1.0;   // sup_t (||theta||_{H^{k-3}}/sigma) / initial
  bool gamma_above_floor = true;
};
BootstrapReport bootstrap_monitor(const Trajectory& traj, const PhysicalParams& p,
                                  int k, double gamma_floor);

// Versioned snapshot serialization; format is "json" or "binary".
void write_snapshots(const Trajectory& traj, const std::string& path,
                     const std::string& format);
Trajectory read_snapshots(const std::string& path);

}  // namespace muskat
