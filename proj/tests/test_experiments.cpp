#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "muskat/config.hpp"
#include "muskat/experiments.hpp"

using namespace muskat;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const char* kDemoConfig = R"({
  "params": {"rho0": 0.0, "rho1": 1.0, "rho2": 2.0, "sigma": 0.1},
  "grid": {"half_length": 3.14159265358979323846, "n": 64},
  "profile": {
    "gamma0": 0.08,
    "f": {"kind": "gaussian", "amplitude": 1e-3, "width": 0.5, "center": 0.0},
    "g": {"kind": "zero"}
  },
  "stepper": {"cfl": 0.3, "C2": 1.0, "horizon": 0.05},
  "monitor": {"k": 3, "report_interval": 0.025},
  "output": {"dir": "out", "formats": ["csv", "json", "svg"]}
})";

std::string tmp_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("config parses and hashes") {
  const RunConfig cfg = parse_config_text(kDemoConfig);
  CHECK(cfg.params.sigma == 0.1);
  CHECK(cfg.grid.n == 64);
  CHECK(cfg.stepper.horizon == 0.05);
  CHECK(cfg.profile.has_value());
  CHECK(cfg.config_hash.size() == 16);
  // the hash is stable across whitespace-only reformatting
  json j = json::parse(kDemoConfig);
  CHECK(parse_config_text(j.dump(4)).config_hash == cfg.config_hash);
}

TEST_CASE("config rejects unknown keys at every level") {
  json j = json::parse(kDemoConfig);
  j["surprise"] = 1;
  CHECK_THROWS_AS(parse_config_text(j.dump()), std::invalid_argument);

  json j2 = json::parse(kDemoConfig);
  j2["stepper"]["dtt"] = 0.1;
  CHECK_THROWS_AS(parse_config_text(j2.dump()), std::invalid_argument);

  json j3 = json::parse(kDemoConfig);
  j3["profile"]["f"]["widht"] = 0.3;
  CHECK_THROWS_AS(parse_config_text(j3.dump()), std::invalid_argument);
}

TEST_CASE("config rejects bad values") {
  json j = json::parse(kDemoConfig);
  j["grid"]["n"] = 6;  // not a power of two
  CHECK_THROWS_AS(parse_config_text(j.dump()), std::invalid_argument);

  json j2 = json::parse(kDemoConfig);
  j2["params"]["sigma_list"] = {0.1, 0.2};  // not decreasing
  CHECK_THROWS_AS(parse_config_text(j2.dump()), std::invalid_argument);

  json j3 = json::parse(kDemoConfig);
  j3["params"]["sigma_list"] = {1.5, 0.2};  // out of (0, 1)
  CHECK_THROWS_AS(parse_config_text(j3.dump()), std::invalid_argument);

  json j4 = json::parse(kDemoConfig);
  j4["linear"] = {{"amplitude", 1e-4}};  // too large for the linear regime
  CHECK_THROWS_AS(parse_config_text(j4.dump()), std::invalid_argument);

  json j5 = json::parse(kDemoConfig);
  j5["monitor"]["report_interval"] = 0.0;
  CHECK_THROWS_AS(parse_config_text(j5.dump()), std::invalid_argument);

  json j6 = json::parse(kDemoConfig);
  j6["stepper"]["cfl"] = -0.1;
  CHECK_THROWS_AS(parse_config_text(j6.dump()), std::invalid_argument);

  CHECK_THROWS_AS(parse_config_text("not json"), std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), std::invalid_argument);
}

TEST_CASE("resolution escalation rule") {
  const double L = 3.14159265358979323846;
  CHECK(escalate_n(256, L, 0.1) == 256);     // 8L/sigma ~ 251
  CHECK(escalate_n(256, L, 0.05) == 512);
  CHECK(escalate_n(256, L, 0.025) == 1024);
  CHECK(escalate_n(256, L, 0.0125) == 2048);
  CHECK(escalate_n(1024, L, 0.5) == 1024);   // never shrinks
  CHECK_THROWS_AS(escalate_n(256, L, 1e-5), std::invalid_argument);
}

TEST_CASE("kernel verification suites pass on a small budget") {
  VerifyConfig cfg;
  cfg.samples = 2000;
  cfg.seed = 123;
  const auto recs = run_kernel_verification(cfg);
  REQUIRE(recs.size() == 8);
  for (const auto& r : recs) {
    INFO(r.identity, " metric=", r.max_rel_err, " note=", r.note);
    CHECK(r.pass);
  }
}

TEST_CASE("kernel verification with zero samples is a vacuous pass") {
  VerifyConfig cfg;
  cfg.samples = 0;
  const auto recs = run_kernel_verification(cfg);
  for (const auto& r : recs) CHECK(r.pass);
}

TEST_CASE("positivity suite marks w0 out of regime instead of failing") {
  VerifyConfig cfg;
  cfg.samples = 500;
  cfg.w0 = 0.5;
  const auto recs = run_kernel_verification(cfg);
  for (const auto& r : recs) {
    if (r.identity == "positivity_2_15") {
      CHECK(r.note == "out-of-regime");
      CHECK(r.pass);
    }
  }
}

TEST_CASE("cmd_simulate writes the artifact set") {
  const std::string dir = tmp_dir("muskat_sim_test");
  const RunConfig cfg = parse_config_text(kDemoConfig);
  CHECK(cmd_simulate(cfg, dir) == 0);
  CHECK(fs::exists(dir + "/norms.csv"));
  CHECK(fs::exists(dir + "/summary.json"));
  CHECK(fs::exists(dir + "/norms.svg"));
  const json summary = read_json(dir + "/summary.json");
  CHECK(summary.at("termination") == "horizon");
  CHECK(summary.at("lifespan").get<double>() == doctest::Approx(0.05));
  CHECK(summary.at("config") == cfg.config_hash);

  // the csv embeds the config hash
  std::ifstream in(dir + "/norms.csv");
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);
  CHECK(l2.find(cfg.config_hash) != std::string::npos);
}

TEST_CASE("cmd_simulate zero profile reports zero norms") {
  const std::string dir = tmp_dir("muskat_sim_zero");
  json j = json::parse(kDemoConfig);
  j["profile"]["f"]["kind"] = "zero";
  const RunConfig cfg = parse_config_text(j.dump());
  CHECK(cmd_simulate(cfg, dir) == 0);
  const json summary = read_json(dir + "/summary.json");
  CHECK(summary.at("final").at("energy").get<double>() == 0.0);
  CHECK(summary.at("lifespan").get<double>() == doctest::Approx(0.05));
}

TEST_CASE("sweep requires the rescaled profile form") {
  json j = json::parse(kDemoConfig);
  j["params"]["sigma_list"] = {0.2, 0.1};
  const RunConfig cfg = parse_config_text(j.dump());
  CHECK_THROWS_AS(run_sigma_sweep(cfg), std::invalid_argument);
}

TEST_CASE("single-sigma sweep degenerates to one simulate row") {
  json j = json::parse(kDemoConfig);
  j["params"]["sigma_list"] = {0.2};
  j["profile"] = {{"gamma0", 0.08},
                  {"h", {{"kind", "gaussian"}, {"amplitude", 1e-3}, {"width", 0.5}}},
                  {"theta1", {{"kind", "gaussian"}, {"amplitude", 1e-3}, {"width", 0.5}}}};
  const RunConfig cfg = parse_config_text(j.dump());
  const SweepSummary s = run_sigma_sweep(cfg);
  REQUIRE(s.rows.size() == 1);
  CHECK(s.rows[0].termination == "horizon");
  CHECK(s.pass);
}

TEST_CASE("cmd_twophase_limit rejects f != g") {
  json j = json::parse(kDemoConfig);
  j["params"]["sigma_list"] = {0.2, 0.1};
  const RunConfig cfg = parse_config_text(j.dump());
  CHECK_THROWS_AS(cmd_twophase_limit(cfg, tmp_dir("muskat_2p_bad")), std::invalid_argument);
}

TEST_CASE("cmd_twophase_limit single row") {
  const std::string dir = tmp_dir("muskat_2p");
  json j = json::parse(kDemoConfig);
  j["params"]["sigma_list"] = {0.2};
  j["profile"]["g"] = j["profile"]["f"];
  const RunConfig cfg = parse_config_text(j.dump());
  CHECK(cmd_twophase_limit(cfg, dir) == 0);
  const json rep = read_json(dir + "/twophase.json");
  REQUIRE(rep.at("rows").size() == 1);
  CHECK(rep.at("rows")[0].at("sup_diff").get<double>() > 0.0);
}

TEST_CASE("cmd_plot renders csv artifacts and rejects malformed input") {
  const std::string dir = tmp_dir("muskat_plot");
  const RunConfig cfg = parse_config_text(kDemoConfig);
  REQUIRE(cmd_simulate(cfg, dir) == 0);
  CHECK(cmd_plot({dir + "/norms.csv"}, dir) == 0);
  CHECK(fs::exists(dir + "/norms_norms.svg"));
  CHECK(fs::exists(dir + "/norms_gamma.svg"));

  const std::string bad = dir + "/bad.csv";
  std::ofstream out(bad);
  out << "# muskat3 norms v1\na,b\n1,2\n3\n";  // short row
  out.close();
  try {
    cmd_plot({bad}, dir);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("row 4") != std::string::npos);
  }
}

TEST_CASE("fnv1a hash is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("muskat") != fnv1a_hex("muskat3"));
}
