#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "muskat/config.hpp"
#include "muskat/experiments.hpp"
#include "muskat/threading.hpp"

namespace {

// 0 = pass, 1 = assertion failure, 2 = config error
constexpr int kConfigError = 2;

std::string resolve_out_dir(const std::string& flag_value, const muskat::RunConfig& cfg) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("MUSKAT3_OUT")) return env;
  return cfg.output.dir;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"muskat3: three-phase Muskat interface simulator and verification lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  unsigned long long seed = 0;
  bool seed_set = false;

  app.add_option("--threads", threads, "worker threads (default: hardware)");

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "run configuration (JSON)");
    if (needs_config) opt->required();
    sub->add_option("--out", out_dir, "output directory (overrides config and MUSKAT3_OUT)");
  };

  auto* sim = app.add_subcommand("simulate", "run one trajectory");
  add_common(sim, true);
  auto* sweep = app.add_subcommand("sweep", "sigma-sweep lifespan study");
  add_common(sweep, true);
  auto* two = app.add_subcommand("twophase", "three-phase vs two-phase limit comparison");
  add_common(two, true);
  auto* lin = app.add_subcommand("linear", "small-amplitude decay-rate validation");
  add_common(lin, true);
  auto* ver = app.add_subcommand("verify", "kernel identity certification");
  add_common(ver, true);
  ver->add_option("--seed", seed, "sampler seed override")->each([&](const std::string&) {
    seed_set = true;
  });

  auto* plot = app.add_subcommand("plot", "render CSV artifacts as SVG");
  std::vector<std::string> plot_inputs;
  plot->add_option("inputs", plot_inputs, "CSV artifacts")->required();
  plot->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  muskat::set_num_threads(threads);

  try {
    if (plot->parsed()) {
      return muskat::cmd_plot(plot_inputs, out_dir);
    }
    muskat::RunConfig cfg = muskat::load_config(config_path);
    if (seed_set) cfg.verify.seed = seed;
    const std::string dir = resolve_out_dir(out_dir, cfg);
    if (sim->parsed()) return muskat::cmd_simulate(cfg, dir);
    if (sweep->parsed()) return muskat::cmd_sigma_sweep(cfg, dir);
    if (two->parsed()) return muskat::cmd_twophase_limit(cfg, dir);
    if (lin->parsed()) return muskat::cmd_linear_check(cfg, dir);
    if (ver->parsed()) return muskat::cmd_verify_kernels(cfg, dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kConfigError;
}
