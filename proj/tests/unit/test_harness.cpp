#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "zonoclt/error.hpp"
#include "zonoclt/harness.hpp"

using namespace zonoclt;

namespace {

ErrorCode code_of(const ExperimentConfig& c) {
  try {
    c.validate();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("validate() did not throw");
  return ErrorCode::Io;
}

ExperimentConfig small(Experiment e) {
  auto c = ExperimentConfig::defaults_for(e);
  c.N_grid = {12, 24};
  c.replications = 200;
  c.zeta_outer = 200;
  c.zeta_inner = 200;
  c.threads = 1;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("experiment names round-trip") {
  for (const auto& name : experiment_names()) CHECK(to_string(parse_experiment(name)) == name);
  CHECK(parse_experiment("moments") == Experiment::MomentsDump);
  CHECK_THROWS_AS(parse_experiment("nope"), Error);
  CHECK(parse_output_format("csv") == OutputFormat::Csv);
  CHECK_THROWS_AS(parse_output_format("xml"), Error);
}

TEST_CASE("defaults") {
  const auto c = ExperimentConfig::defaults_for(Experiment::ZnClt);
  CHECK(c.N_grid == std::vector<std::size_t>{100, 200, 500});
  CHECK(c.n == 2);
  CHECK(c.master_seed == 20121202);
  CHECK_NOTHROW(c.validate());
  CHECK(ExperimentConfig::defaults_for(Experiment::YnVariance).replications == 100000);
  for (const auto& name : experiment_names()) CHECK_NOTHROW(ExperimentConfig::defaults_for(parse_experiment(name)).validate());
}

TEST_CASE("validate rejects malformed configs") {
  auto c = ExperimentConfig::defaults_for(Experiment::XnClt);
  auto bad = c;
  bad.n = 0;
  CHECK(code_of(bad) == ErrorCode::InvalidInput);
  bad = c;
  bad.n = 7;
  CHECK(code_of(bad) == ErrorCode::InvalidInput);
  bad = c;
  bad.N_grid = {};
  CHECK(code_of(bad) == ErrorCode::InvalidInput);
  bad = c;
  bad.N_grid = {50, 50};
  CHECK(code_of(bad) == ErrorCode::InvalidInput);
  bad = c;
  bad.N_grid = {1, 5};
  CHECK(code_of(bad) == ErrorCode::InvalidInput);
  bad = c;
  bad.replications = 99;
  CHECK(code_of(bad) == ErrorCode::InvalidInput);
  bad = ExperimentConfig::defaults_for(Experiment::MomentScaling);
  bad.p = 3;
  CHECK(code_of(bad) == ErrorCode::InvalidInput);
  bad = ExperimentConfig::defaults_for(Experiment::ZnClt);
  bad.zeta_inner = 10;
  CHECK(code_of(bad) == ErrorCode::InvalidInput);
  bad = c;
  bad.n = 5;
  bad.N_grid = {500};
  CHECK(code_of(bad) == ErrorCode::ResourceLimit);
}

TEST_CASE("every experiment runs and produces finite output") {
  for (const auto& name : experiment_names()) {
    CAPTURE(name);
    auto c = small(parse_experiment(name));
    if (c.experiment == Experiment::YnVariance) c.replications = 1000;
    const auto r = run_experiment(c);
    CHECK(r.rows.size() == c.N_grid.size());
    CHECK_NOTHROW(report_to_json(r));
    CHECK_NOTHROW(report_to_csv(r));
  }
}

TEST_CASE("statistics are a function of the config only") {
  for (auto e : {Experiment::XnClt, Experiment::ZnClt, Experiment::ZetaRatio}) {
    auto c = small(e);
    const auto a = run_experiment(c);
    c.threads = 3;
    const auto b = run_experiment(c);
    CHECK(statistics_json(a) == statistics_json(b));
    c.master_seed += 1;
    const auto d = run_experiment(c);
    CHECK(statistics_json(a) != statistics_json(d));
  }
}

TEST_CASE("JSON report round-trips") {
  auto c = small(Experiment::XnClt);
  c.emit_qq = true;
  const auto r = run_experiment(c);
  CHECK(!r.qq.empty());
  const auto back = report_from_json(report_to_json(r));
  CHECK(back == r);
  CHECK_THROWS_AS(report_from_json("{"), Error);
  CHECK_THROWS_AS(report_from_json("{}"), Error);
}

TEST_CASE("CSV layout") {
  const auto r = run_experiment(small(Experiment::XnClt));
  const auto csv = report_to_csv(r);
  CHECK(csv.rfind("# version=", 0) == 0);
  CHECK(csv.find("\nN,mean,var,ks_d,var_ratio,alpha_mean,beta_mean,delta_mean,resamples\n12,") != std::string::npos);
}

TEST_CASE("emit_report writes the report and QQ file") {
  const auto dir = std::filesystem::temp_directory_path() / "zonoclt_harness_test";
  std::filesystem::create_directories(dir);
  auto c = small(Experiment::XnClt);
  c.output_path = (dir / "run.json").string();
  c.emit_qq = true;
  const auto r = run_experiment(c);
  emit_report(r, c);
  const auto j = nlohmann::json::parse(slurp(dir / "run.json"));
  CHECK(j.at("config").at("seed").get<std::uint64_t>() == c.master_seed);
  CHECK(j.at("statistics").at("rows").size() == 2);
  CHECK(slurp(dir / "run.qq.csv").find("N,theoretical_quantile,sample_quantile") != std::string::npos);
  c.output_path = (dir / "missing" / "run.json").string();
  c.emit_qq = false;
  try {
    emit_report(r, c);
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
    CHECK(std::string(e.what()).find("missing") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("qq_path_for") {
  CHECK(qq_path_for("out/run.json") == "out/run.qq.csv");
  CHECK(qq_path_for("a.b/run") == "a.b/run.qq.csv");
  CHECK(qq_path_for("") == "qq.csv");
}
