#include "muskat/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "muskat/errors.hpp"
#include "muskat/spectral.hpp"
#include "muskat/velocity.hpp"

namespace muskat {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::horizon: return "horizon";
    case Termination::resolution_loss: return "resolution_loss";
    case Termination::collision: return "collision";
    case Termination::width_collapse: return "width_collapse";
    case Termination::nan_detected: return "nan";
  }
  return "unknown";
}

double gamma_rhs(double forcing, double gamma, double C2) {
  if (gamma <= 0.0) {
    throw ResolutionLossError("gamma_rhs: width collapsed (gamma <= 0)");
  }
  return -C2 * forcing / (2.0 * std::tanh(2.0 * gamma));
}

namespace {

// The RK4 state: (h, theta, gamma).  theta1 is derived, not integrated.
struct StageState {
  std::vector<double> h, theta;
  double gamma = 0.0;
};

struct StageRhs {
  std::vector<double> dh, dtheta;
  double dgamma = 0.0;
};

StageState axpy(const StageState& y, double a, const StageRhs& k) {
  StageState out = y;
  for (std::size_t i = 0; i < y.h.size(); ++i) {
    out.h[i] += a * k.dh[i];
    out.theta[i] += a * k.dtheta[i];
  }
  out.gamma += a * k.dgamma;
  return out;
}

}  // namespace

HThetaState step(const HThetaState& s, const StepperConfig& cfg, const PhysicalParams& p,
                 const Grid1D& g, double dt) {
  // The integrated vector field is the dealiased one: masking the rhs at
  // every stage keeps all stages inside the retained band, so the classical
  // order survives; masking only once per step would cost an order.
  auto masked = [&](std::vector<double> v) {
    Spectrum c = analyze(v, g);
    dealias(c, g);
    return synthesize(c, g);
  };
  auto rhs = [&](const StageState& y) -> StageRhs {
    HThetaState ht;
    ht.h = y.h;
    ht.theta = y.theta;
    ht.theta1.resize(y.theta.size());
    for (std::size_t i = 0; i < y.theta.size(); ++i) ht.theta1[i] = y.theta[i] / p.sigma;
    ht.gamma = y.gamma;
    RhsPair r = rhs_htheta(ht, p, g);
    // floor the field spectra before differentiating: otherwise rounding
    // noise times xi crosses the floor and the cosh weight blows it up
    Spectrum chs = analyze(y.h, g);
    Spectrum cts = analyze(y.theta, g);
    apply_coeff_floor(chs, kCoeffFloor);
    apply_coeff_floor(cts, kCoeffFloor);
    const double forcing = linf_gamma_norm(derivative(chs, g), g, y.gamma) +
                           linf_gamma_norm(derivative(cts, g), g, y.gamma);
    StageRhs out;
    out.dh = masked(std::move(r.first));
    out.dtheta = masked(std::move(r.second));
    out.dgamma = gamma_rhs(forcing, y.gamma, cfg.C2);
    return out;
  };

  StageState y{s.h, s.theta, s.gamma};
  StageState next = rk4_step(y, dt, rhs, axpy);

  HThetaState out;
  out.h = std::move(next.h);
  out.theta = std::move(next.theta);
  out.theta1.resize(out.theta.size());
  for (std::size_t i = 0; i < out.theta.size(); ++i) out.theta1[i] = out.theta[i] / p.sigma;
  out.gamma = next.gamma;
  out.t = s.t + dt;
  return out;
}

namespace {

bool has_nan(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return true;
  }
  return false;
}

}  // namespace

Trajectory run(const HThetaState& initial, const StepperConfig& cfg, const PhysicalParams& p,
               const Grid1D& g) {
  Trajectory traj;
  const double dt = cfg.dt > 0.0 ? cfg.dt : cfg.cfl * g.dx() / p.delta_rho;
  if (!(dt > 0.0)) throw std::invalid_argument("run: nonpositive time step");

  HThetaState s = initial;
  double next_report = 0.0;

  auto record = [&](const HThetaState& st) {
    traj.snapshots.push_back({st, compute_report(st, g, p, cfg.k)});
  };

  while (true) {
    if (has_nan(s.h) || has_nan(s.theta) || !std::isfinite(s.gamma)) {
      traj.termination = Termination::nan_detected;
      break;
    }
    if (min_distance(s, p) < cfg.collision_factor * p.sigma) {
      traj.termination = Termination::collision;
      break;
    }
    if (s.gamma <= cfg.gamma_floor) {
      traj.termination = Termination::width_collapse;
      break;
    }
    const Spectrum ch = analyze(s.h, g);
    const Spectrum ct = analyze(s.theta, g);
    if (spectral_tail(ch, g) > cfg.spectral_tail_threshold ||
        spectral_tail(ct, g) > cfg.spectral_tail_threshold) {
      traj.termination = Termination::resolution_loss;
      break;
    }
    if (s.t >= next_report - 1e-12 * std::max(1.0, cfg.horizon)) {
      try {
        record(s);
      } catch (const ResolutionLossError&) {
        traj.termination = Termination::resolution_loss;
        break;
      }
      next_report += cfg.report_interval;
    }
    if (s.t >= cfg.horizon - 1e-12 * std::max(1.0, cfg.horizon)) {
      traj.termination = Termination::horizon;
      break;
    }
    const double step_dt = std::min(dt, cfg.horizon - s.t);
    try {
      s = step(s, cfg, p, g, step_dt);
    } catch (const CollisionError&) {
      traj.termination = Termination::collision;
      break;
    } catch (const ResolutionLossError&) {
      traj.termination = Termination::resolution_loss;
      break;
    }
  }

  // record the final state unless it was just recorded
  if (traj.snapshots.empty() || traj.snapshots.back().state.t < s.t - 1e-15) {
    if (!has_nan(s.h) && !has_nan(s.theta) && std::isfinite(s.gamma) && s.gamma > 0.0) {
      try {
        record(s);
      } catch (const ResolutionLossError&) {
        // keep the trajectory; the termination reason already says why
      }
    }
  }
  traj.lifespan = s.t;
  return traj;
}

BootstrapReport bootstrap_monitor(const Trajectory& traj, const PhysicalParams& p, int k,
                                  double gamma_floor) {
  (void)k;  // the norm order was fixed when the reports were recorded
  BootstrapReport rep;
  if (traj.snapshots.empty()) return rep;
  const NormReport& first = traj.snapshots.front().report;
  const double e0 = first.hk_h + p.mu1 * p.mu2 * first.hk_theta;
  const double r0 = std::sqrt(first.hk_theta1);
  double esup = 0.0, rsup = 0.0;
  for (const auto& snap : traj.snapshots) {
    const NormReport& r = snap.report;
    esup = std::max(esup, r.hk_h + p.mu1 * p.mu2 * r.hk_theta);
    rsup = std::max(rsup, std::sqrt(r.hk_theta1));
    if (snap.state.gamma <= gamma_floor) rep.gamma_above_floor = false;
  }
  // 0/0 convention: a zero run has ratio one
  rep.energy_ratio_sup = (e0 == 0.0) ? 1.0 : esup / e0;
  rep.theta_ratio_sup = (r0 == 0.0) ? 1.0 : rsup / r0;
  return rep;
}

namespace {

using json = nlohmann::json;

json snapshot_to_json(const Snapshot& s) {
  json j;
  j["t"] = s.state.t;
  j["gamma"] = s.state.gamma;
  j["h"] = s.state.h;
  j["theta"] = s.state.theta;
  json rep;
  rep["energy"] = s.report.energy;
  rep["hk_h"] = s.report.hk_h;
  rep["hk_theta"] = s.report.hk_theta;
  rep["hk_theta1"] = s.report.hk_theta1;
  rep["linf_dxh"] = s.report.linf_dxh;
  rep["linf_dxtheta"] = s.report.linf_dxtheta;
  rep["diss_k"] = s.report.diss;
  rep["min_distance"] = s.report.min_dist;
  if (s.report.strip_estimate) rep["strip_estimate"] = *s.report.strip_estimate;
  j["report"] = rep;
  return j;
}

constexpr std::uint32_t kBinaryMagic = 0x4d534b33;  // "MSK3"
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

void write_snapshots(const Trajectory& traj, const std::string& path,
                     const std::string& format) {
  if (format == "json") {
    json j;
    j["version"] = kFormatVersion;
    j["termination"] = to_string(traj.termination);
    j["lifespan"] = traj.lifespan;
    j["snapshots"] = json::array();
    for (const auto& s : traj.snapshots) j["snapshots"].push_back(snapshot_to_json(s));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << "\n";
    return;
  }
  if (format == "binary") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    auto put_u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto put_f64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    put_u32(kBinaryMagic);
    put_u32(kFormatVersion);
    put_u32(static_cast<std::uint32_t>(traj.termination));
    put_u32(static_cast<std::uint32_t>(traj.snapshots.size()));
    put_f64(traj.lifespan);
    for (const auto& s : traj.snapshots) {
      put_f64(s.state.t);
      put_f64(s.state.gamma);
      put_u32(static_cast<std::uint32_t>(s.state.h.size()));
      for (double v : s.state.h) put_f64(v);
      for (double v : s.state.theta) put_f64(v);
    }
    return;
  }
  throw std::invalid_argument("unknown snapshot format: " + format);
}

Trajectory read_snapshots(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error("cannot open " + path);
  std::uint32_t magic = 0;
  probe.read(reinterpret_cast<char*>(&magic), 4);
  Trajectory traj;
  if (magic == kBinaryMagic) {
    auto get_u32 = [&]() {
      std::uint32_t v = 0;
      probe.read(reinterpret_cast<char*>(&v), 4);
      return v;
    };
    auto get_f64 = [&]() {
      double v = 0;
      probe.read(reinterpret_cast<char*>(&v), 8);
      return v;
    };
    const std::uint32_t version = get_u32();
    if (version != kFormatVersion) {
      throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
    }
    traj.termination = static_cast<Termination>(get_u32());
    const std::uint32_t count = get_u32();
    traj.lifespan = get_f64();
    for (std::uint32_t s = 0; s < count; ++s) {
      Snapshot snap;
      snap.state.t = get_f64();
      snap.state.gamma = get_f64();
      const std::uint32_t n = get_u32();
      snap.state.h.resize(n);
      snap.state.theta.resize(n);
      for (auto& v : snap.state.h) v = get_f64();
      for (auto& v : snap.state.theta) v = get_f64();
      traj.snapshots.push_back(std::move(snap));
    }
    return traj;
  }
  probe.close();
  std::ifstream in(path);
  json j = json::parse(in);
  if (j.at("version").get<std::uint32_t>() != kFormatVersion) {
    throw std::runtime_error("unsupported snapshot version");
  }
  const std::string term = j.at("termination");
  for (Termination t : {Termination::horizon, Termination::resolution_loss,
                        Termination::collision, Termination::width_collapse,
                        Termination::nan_detected}) {
    if (term == to_string(t)) traj.termination = t;
  }
  traj.lifespan = j.at("lifespan");
  for (const auto& js : j.at("snapshots")) {
    Snapshot snap;
    snap.state.t = js.at("t");
    snap.state.gamma = js.at("gamma");
    snap.state.h = js.at("h").get<std::vector<double>>();
    snap.state.theta = js.at("theta").get<std::vector<double>>();
    traj.snapshots.push_back(std::move(snap));
  }
  return traj;
}

}  // namespace muskat
