#include "muskat/config.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace muskat {

namespace {

using json = nlohmann::json;

void expect_keys(const json& j, const std::string& block,
                 const std::set<std::string>& allowed) {
  if (!j.is_object()) {
    throw std::invalid_argument("config: block '" + block + "' must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw std::invalid_argument("config: unknown key '" + key + "' in block '" + block + "'");
    }
  }
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw std::invalid_argument(std::string("config: '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

ProfileSpec parse_profile(const json& j, const std::string& block) {
  expect_keys(j, block, {"kind", "amplitude", "width", "center", "mode"});
  ProfileSpec p;
  const std::string kind = j.value("kind", "zero");
  if (kind == "zero") {
    p.kind = ProfileSpec::Kind::zero;
  } else if (kind == "gaussian") {
    p.kind = ProfileSpec::Kind::gaussian;
  } else if (kind == "cosine") {
    p.kind = ProfileSpec::Kind::cosine;
  } else if (kind == "cosbump") {
    p.kind = ProfileSpec::Kind::cosbump;
  } else {
    throw std::invalid_argument("config: unknown profile kind '" + kind + "' in " + block);
  }
  p.amplitude = get_num(j, "amplitude", 0.0);
  p.center = get_num(j, "center", 0.0);
  if (p.kind == ProfileSpec::Kind::cosine) {
    // integer mode number; "mode" preferred, "width" accepted
    const double m = j.contains("mode") ? get_num(j, "mode", 1.0) : get_num(j, "width", 1.0);
    if (m != static_cast<int>(m) || m < 1) {
      throw std::invalid_argument("config: cosine profile mode must be a positive integer");
    }
    p.width = m;
  } else {
    p.width = get_num(j, "width", 1.0);
    if (p.kind != ProfileSpec::Kind::zero && !(p.width > 0.0)) {
      throw std::invalid_argument("config: profile width must be positive in " + block);
    }
  }
  return p;
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  expect_keys(j, "<root>",
              {"params", "grid", "profile", "stepper", "monitor", "output", "sweep", "linear",
               "verify"});

  RunConfig cfg;
  cfg.config_hash = fnv1a_hex(j.dump());

  if (j.contains("params")) {
    const json& p = j.at("params");
    expect_keys(p, "params", {"rho0", "rho1", "rho2", "sigma", "sigma_list"});
    cfg.params.rho0 = get_num(p, "rho0", 0.0);
    cfg.params.rho1 = get_num(p, "rho1", 1.0);
    cfg.params.rho2 = get_num(p, "rho2", 2.0);
    cfg.params.sigma = get_num(p, "sigma", 0.1);
    if (p.contains("sigma_list")) {
      if (!p.at("sigma_list").is_array() || p.at("sigma_list").empty()) {
        throw std::invalid_argument("config: sigma_list must be a nonempty array");
      }
      for (const auto& v : p.at("sigma_list")) {
        cfg.params.sigma_list.push_back(v.get<double>());
      }
      for (std::size_t i = 0; i < cfg.params.sigma_list.size(); ++i) {
        const double s = cfg.params.sigma_list[i];
        if (!(s > 0.0 && s < 1.0)) {
          throw std::invalid_argument("config: sigma_list entries must lie in (0, 1)");
        }
        if (i > 0 && s >= cfg.params.sigma_list[i - 1]) {
          throw std::invalid_argument("config: sigma_list must be strictly decreasing");
        }
      }
    }
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    expect_keys(g, "grid", {"half_length", "n"});
    cfg.grid.half_length = get_num(g, "half_length", cfg.grid.half_length);
    const double n = get_num(g, "n", cfg.grid.n);
    if (n != static_cast<int>(n) || n < 8 ||
        (static_cast<int>(n) & (static_cast<int>(n) - 1)) != 0) {
      throw std::invalid_argument("config: grid n must be a power of two >= 8");
    }
    cfg.grid.n = static_cast<int>(n);
  }

  if (j.contains("profile")) {
    const json& pr = j.at("profile");
    expect_keys(pr, "profile", {"gamma0", "f", "g", "h", "theta1"});
    InitialDataSpec spec;
    spec.gamma0 = get_num(pr, "gamma0", 0.1);
    const bool has_fg = pr.contains("f") || pr.contains("g");
    const bool has_ht = pr.contains("h") || pr.contains("theta1");
    if (has_fg && has_ht) {
      throw std::invalid_argument("config: profile must use either (f, g) or (h, theta1)");
    }
    if (has_ht) {
      spec.use_htheta = true;
      if (pr.contains("h")) spec.h = parse_profile(pr.at("h"), "profile.h");
      if (pr.contains("theta1")) spec.theta1 = parse_profile(pr.at("theta1"), "profile.theta1");
    } else {
      if (pr.contains("f")) spec.f = parse_profile(pr.at("f"), "profile.f");
      if (pr.contains("g")) spec.g = parse_profile(pr.at("g"), "profile.g");
    }
    cfg.profile = spec;
  }

  if (j.contains("stepper")) {
    const json& st = j.at("stepper");
    expect_keys(st, "stepper", {"dt", "cfl", "C2", "horizon", "integrator"});
    cfg.stepper.dt = get_num(st, "dt", 0.0);
    cfg.stepper.cfl = get_num(st, "cfl", 0.3);
    cfg.stepper.C2 = get_num(st, "C2", 1.0);
    cfg.stepper.horizon = get_num(st, "horizon", 0.5);
    if (st.contains("integrator") && st.at("integrator") != "rk4") {
      throw std::invalid_argument("config: only the rk4 integrator is available");
    }
    if (!(cfg.stepper.C2 > 0.0)) throw std::invalid_argument("config: C2 must be positive");
    if (!(cfg.stepper.horizon > 0.0)) {
      throw std::invalid_argument("config: horizon must be positive");
    }
    if (cfg.stepper.dt <= 0.0 && !(cfg.stepper.cfl > 0.0)) {
      throw std::invalid_argument("config: cfl must be positive when dt is not fixed");
    }
  }

  if (j.contains("monitor")) {
    const json& mo = j.at("monitor");
    expect_keys(mo, "monitor",
                {"k", "report_interval", "spectral_tail_threshold", "collision_factor",
                 "gamma_floor", "tail_tol"});
    const double k = get_num(mo, "k", 3);
    if (k != static_cast<int>(k) || k < 3) {
      throw std::invalid_argument("config: monitor k must be an integer >= 3");
    }
    cfg.stepper.k = static_cast<int>(k);
    cfg.stepper.report_interval = get_num(mo, "report_interval", 0.05);
    cfg.stepper.spectral_tail_threshold = get_num(mo, "spectral_tail_threshold", 1e-6);
    cfg.stepper.collision_factor = get_num(mo, "collision_factor", 0.5);
    cfg.stepper.gamma_floor = get_num(mo, "gamma_floor", 1e-3);
    cfg.tail_tol = get_num(mo, "tail_tol", 1e-12);
    if (!(cfg.stepper.report_interval > 0.0)) {
      throw std::invalid_argument("config: report_interval must be positive");
    }
    if (!(cfg.stepper.gamma_floor > 0.0)) {
      throw std::invalid_argument("config: gamma_floor must be positive");
    }
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    expect_keys(o, "output", {"dir", "formats", "snapshot_format"});
    if (o.contains("dir")) cfg.output.dir = o.at("dir").get<std::string>();
    if (o.contains("formats")) {
      cfg.output.formats.clear();
      for (const auto& f : o.at("formats")) {
        const std::string s = f.get<std::string>();
        if (s != "csv" && s != "json" && s != "snapshots" && s != "svg") {
          throw std::invalid_argument("config: unknown output format '" + s + "'");
        }
        cfg.output.formats.push_back(s);
      }
    }
    if (o.contains("snapshot_format")) {
      cfg.output.snapshot_format = o.at("snapshot_format").get<std::string>();
      if (cfg.output.snapshot_format != "json" && cfg.output.snapshot_format != "binary") {
        throw std::invalid_argument("config: snapshot_format must be 'json' or 'binary'");
      }
    }
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    expect_keys(s, "sweep", {"theta_ratio_bound"});
    cfg.sweep.theta_ratio_bound = get_num(s, "theta_ratio_bound", 2.0);
  }

  if (j.contains("linear")) {
    const json& l = j.at("linear");
    expect_keys(l, "linear",
                {"modes", "amplitude", "fit_horizon", "tolerance", "second_harmonic_max"});
    if (l.contains("modes")) {
      cfg.linear.modes.clear();
      for (const auto& m : l.at("modes")) {
        const int mi = m.get<int>();
        if (mi < 1) throw std::invalid_argument("config: linear modes must be positive");
        cfg.linear.modes.push_back(mi);
      }
    }
    cfg.linear.amplitude = get_num(l, "amplitude", 1e-6);
    if (cfg.linear.amplitude > 1e-5) {
      throw std::invalid_argument("config: linear amplitude must be <= 1e-5");
    }
    cfg.linear.fit_horizon = get_num(l, "fit_horizon", 0.25);
    cfg.linear.tolerance = get_num(l, "tolerance", 1e-3);
    cfg.linear.second_harmonic_max = get_num(l, "second_harmonic_max", 1e-4);
  }

  if (j.contains("verify")) {
    const json& v = j.at("verify");
    expect_keys(v, "verify", {"samples", "w0", "tolerance", "positivity_margin", "seed"});
    cfg.verify.samples = static_cast<long>(get_num(v, "samples", 100000));
    if (cfg.verify.samples < 0) throw std::invalid_argument("config: samples must be >= 0");
    cfg.verify.w0 = get_num(v, "w0", 0.01);
    cfg.verify.tolerance = get_num(v, "tolerance", 1e-10);
    cfg.verify.positivity_margin = get_num(v, "positivity_margin", 0.1);
    if (v.contains("seed")) cfg.verify.seed = v.at("seed").get<unsigned long long>();
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace muskat
