#pragma once

#include <optional>
#include <string>
#include <vector>

#include "muskat/evolution.hpp"
#include "muskat/profiles.hpp"

namespace muskat {

struct GridConfig {
  double half_length = 3.14159265358979323846;
  int n = 512;
};

struct ParamsConfig {
  double rho0 = 0.0, rho1 = 1.0, rho2 = 2.0;
  double sigma = 0.1;               // single-run value
  std::vector<double> sigma_list;   // sweep/twophase/linear value set (optional)
};

struct OutputConfig {
  std::string dir = "out";
  std::vector<std::string> formats = {"csv", "json"};
  std::string snapshot_format = "json";
};

struct SweepConfig {
  double theta_ratio_bound = 2.0;  // sup_t ratio to initial, uniform in sigma
};

struct LinearConfig {
  std::vector<int> modes = {1, 2, 4};
  double amplitude = 1e-6;
  double fit_horizon = 0.25;
  double tolerance = 1e-3;
  double second_harmonic_max = 1e-4;
};

struct VerifyConfig {
  long samples = 100000;
  double w0 = 0.01;
  double tolerance = 1e-10;
  double positivity_margin = 0.1;
  unsigned long long seed = 7;
};

struct RunConfig {
  ParamsConfig params;
  GridConfig grid;
  std::optional<InitialDataSpec> profile;
  StepperConfig stepper;
  double tail_tol = 1e-12;
  OutputConfig output;
  SweepConfig sweep;
  LinearConfig linear;
  VerifyConfig verify;
  std::string config_hash;  // FNV-1a of the canonical JSON text
};

// Strict parse: unknown keys anywhere are rejected with std::invalid_argument.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

std::string fnv1a_hex(const std::string& text);

}  // namespace muskat
