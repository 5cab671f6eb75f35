#pragma once

#include <string>
#include <vector>

#include "muskat/config.hpp"

namespace muskat {

// Exit-code contract shared by the CLI: 0 pass, 1 assertion failure,
// 2 config error.  Config errors are thrown as std::invalid_argument and
// mapped by the caller; these functions return 0 or 1.

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir);
int cmd_sigma_sweep(const RunConfig& cfg, const std::string& out_dir);
int cmd_twophase_limit(const RunConfig& cfg, const std::string& out_dir);
int cmd_linear_check(const RunConfig& cfg, const std::string& out_dir);
int cmd_verify_kernels(const RunConfig& cfg, const std::string& out_dir);
int cmd_plot(const std::vector<std::string>& inputs, const std::string& out_dir);

// sigma >= 4 dx resolution rule: smallest power of two >= n_base that
// resolves the kernel feature (n grows like 1/sigma).
int escalate_n(int n_base, double half_length, double sigma);

struct SweepRow {
  double sigma = 0.0;
  int n = 0;
  double lifespan = 0.0;
  std::string termination;
  double sup_theta_ratio = 0.0;          // sup_t ||theta||_{H^{k-3}}/sigma
  double theta_ratio_over_initial = 0.0; // same, normalized by its t=0 value
  double sup_energy_ratio = 0.0;         // sup_t (|h|^2 + mu1 mu2 |theta|^2)/initial
  double min_gap_over_sigma = 0.0;
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  bool pass = false;
};

SweepSummary run_sigma_sweep(const RunConfig& cfg);

// Kernel-identity certification record, one per suite.
struct VerifyRecord {
  std::string identity;
  long samples = 0;
  double max_rel_err = 0.0;
  bool pass = false;
  std::string note;  // "out-of-regime", "vacuous", ...
};

std::vector<VerifyRecord> run_kernel_verification(const VerifyConfig& cfg);

}  // namespace muskat
