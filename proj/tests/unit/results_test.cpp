// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mmia/results.hpp"

using namespace mmia;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  const std::string s = slurp(p);
  return s.substr(0, s.find("\r\n"));
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<PmdPoint> sample_pmd() {
  PmdPoint a;
  a.option = "DDO";
  a.snr_db = -9.5;
  a.cycles = 3;
  a.trials = 10000;
  a.misses = 42;
  a.pmd = 0.0042;
  a.ci95 = 0.00127;
  PmdPoint b = a;
  b.option = "a,b\"c";
  return {a, b};
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(614.4) == "614.4");
  CHECK(format_number(3.0) == "3");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("PMD CSV schema and quoting") {
  TempDir dir("mmia_results_pmd");
  const auto path = dir.path / "pmd.csv";
  write_pmd_csv(path, sample_pmd());
  CHECK(first_line(path) == "option,phase,snr_db,K,trials,pmd,ci95");
  const std::string body = slurp(path);
  CHECK(body.find("DDO,sync,-9.5,3,10000,0.0042,0.00127\r\n") != std::string::npos);
  CHECK(body.find("\"a,b\"\"c\"") != std::string::npos);
}

TEST_CASE("delay CSV schema and unreachable points") {
  TempDir dir("mmia_results_delay");
  DelayCurve ok;
  ok.option = "DDO";
  ok.percentile = PercentileTag::P1;
  ok.t_sig = 10e-6;
  ok.slots = 1024;
  ok.k_star = 3;
  ok.achievable = true;
  ok.points = {{0.05, 0.6144}};
  DelayCurve bad = ok;
  bad.achievable = false;
  bad.k_star = 0;
  bad.points = {{0.05, std::numeric_limits<double>::infinity()}};
  const auto path = dir.path / "delay.csv";
  write_delay_csv(path, {ok, bad});
  CHECK(first_line(path) == "option,phase,percentile,T_sig_us,phi,K_star,L,delay_ms");
  const std::string body = slurp(path);
  CHECK(body.find("DDO,sync,1%,10,0.05,3,1024,614.4\r\n") != std::string::npos);
  CHECK(body.find("DDO,sync,1%,10,0.05,NA,1024,NA\r\n") != std::string::npos);
}

TEST_CASE("SNR and bound CSV headers") {
  TempDir dir("mmia_results_snr");
  const ExperimentConfig cfg;
  const auto dist = run_snr_distribution(cfg, 1000, 1);
  write_snr_csv(dir.path / "p.csv", dir.path / "s.csv", dist, cfg);
  CHECK(first_line(dir.path / "p.csv") == "direction,percentile,gamma0_db");
  CHECK(first_line(dir.path / "s.csv") == "rank,cdf,dl_db,ul_db");
  write_bounds_csv(dir.path / "b.csv", run_bounds(DelayBoundParams{}, {0.05}));
  CHECK(first_line(dir.path / "b.csv") == "arch,sync_tx,phi,bound_ms");
  write_threshold_csv(dir.path / "t.csv", {{"DDO", Phase::Sync, {10, 1, 1024, 4}, 1.4493e-8, 60.0}});
  CHECK(first_line(dir.path / "t.csv") == "option,phase,K,M,directions,n_div,target_pfa,threshold");
}

TEST_CASE("identical inputs give byte-identical files") {
  TempDir dir("mmia_results_repeat");
  const ExperimentConfig cfg;
  for (const char* name : {"a", "b"}) {
    const auto dist = run_snr_distribution(cfg, 1000, 5);
    write_snr_csv(dir.path / (std::string(name) + "_p.csv"), dir.path / (std::string(name) + "_s.csv"), dist, cfg);
    write_pmd_csv(dir.path / (std::string(name) + "_pmd.csv"), sample_pmd());
    write_manifest(dir.path / (std::string(name) + "_manifest.json"), "snr-dist", cfg, {"p.csv"});
  }
  for (const char* suffix : {"_p.csv", "_s.csv", "_pmd.csv", "_manifest.json"})
    CHECK(slurp(dir.path / (std::string("a") + suffix)) == slurp(dir.path / (std::string("b") + suffix)));
}

TEST_CASE("manifest records command, seed, config and version") {
  TempDir dir("mmia_results_manifest");
  ExperimentConfig cfg;
  cfg.seed = 77;
  write_manifest(dir.path / "m.json", "pmd --option DDO", cfg, {"pmd.csv"});
  const auto j = nlohmann::json::parse(slurp(dir.path / "m.json"));
  CHECK(j.at("command") == "pmd --option DDO");
  CHECK(j.at("seed") == 77);
  CHECK(j.at("config").at("seed") == 77);
  CHECK(j.contains("version"));
  CHECK(j.contains("operating_points"));
  CHECK(j.at("outputs").size() == 1);
}

TEST_CASE("write errors name the path") {
  TempDir dir("mmia_results_error");
  const fs::path blocker = dir.path / "blocker";
  std::ofstream(blocker) << "x";
  try {
    write_pmd_csv(blocker / "pmd.csv", sample_pmd());
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("blocker") != std::string::npos);
  }
}
