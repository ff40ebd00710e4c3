#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(SOFTGRIP_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& rel) { return std::string(SOFTGRIP_SAMPLES_DIR) + "/" + rel; }

}  // namespace

using nlohmann::json;

TEST(Cli, SolveJson) {
  const CliResult r = run("solve --pressure 20 --json");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["Rg_mm"].get<double>(), 21.5787016, 1e-6);
  EXPECT_NEAR(j["theta0_deg"].get<double>(), 64.4593794, 1e-6);
  EXPECT_FALSE(j["in_solver_box"].get<bool>());
}

TEST(Cli, NegativePressureExitsTwo) {
  const CliResult r = run("solve --pressure -5");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("inflation branch only"), std::string::npos);
}

TEST(Cli, BadArgumentsExitOne) {
  EXPECT_EQ(run("solve --pressure abc").code, 1);
  EXPECT_EQ(run("nosuchcommand").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, InvertRoundTrip) {
  const CliResult r = run("invert --aperture 22 --json");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(json::parse(r.out)["pressure_kPa"].get<double>(), 28.9263, 1e-3);
  EXPECT_EQ(run("invert --aperture 30").code, 2);
}

TEST(Cli, PlanSamples) {
  auto mode_of = [](const std::string& file) {
    const CliResult r = run("plan --object " + sample("objects/" + file));
    return std::make_pair(r.code, json::parse(r.out)["mode"]);
  };
  EXPECT_EQ(mode_of("silicon_wafer.json"), std::make_pair(0, json("suction")));
  EXPECT_EQ(mode_of("beaker.json"), std::make_pair(0, json("expansion")));
  EXPECT_EQ(mode_of("sphere_40mm.json"), std::make_pair(0, json("contraction")));
  const auto big = mode_of("sphere_200mm.json");
  EXPECT_EQ(big.first, 2);
  EXPECT_TRUE(big.second.is_null());
}

TEST(Cli, ConfigOverridesViaFlagAndEnvironment) {
  const CliResult base = run("solve --pressure 20 --json");
  const CliResult flag = run("--config " + sample("config_stiffer.json") + " solve --pressure 20 --json");
  ASSERT_EQ(flag.code, 0) << flag.out;
  EXPECT_LT(json::parse(flag.out)["Rg_mm"].get<double>(), json::parse(base.out)["Rg_mm"].get<double>());
  const std::string env_cmd = "GRIPPER_CONFIG=" + sample("config_stiffer.json") + " ";
  const std::string cmd = env_cmd + SOFTGRIP_CLI_PATH + " solve --pressure 20 --json";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  pclose(pipe);
  EXPECT_EQ(json::parse(out)["Rg_mm"], json::parse(flag.out)["Rg_mm"]);
  EXPECT_EQ(run("--config /nonexistent.json solve --pressure 1").code, 1);
}

TEST(Cli, FitSuctionAndPeakForce) {
  const CliResult fit = run("fit-suction --data " + sample("data/suction_anchors.csv"));
  ASSERT_EQ(fit.code, 0) << fit.out;
  const json j = json::parse(fit.out);
  EXPECT_NEAR(j["value"]["A_eff_mm2"].get<double>(), 2082.14, 1.0);
  const CliResult peak = run("peak-force --data " + sample("data/pull_trace.csv") + " --window 3 --json");
  ASSERT_EQ(peak.code, 0) << peak.out;
  EXPECT_NEAR(json::parse(peak.out)["peak_force_N"].get<double>(), 14.0, 1e-9);
}

TEST(Cli, PrintDefaultConfigRoundTrips) {
  const CliResult r = run("config --print-default");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["material"]["c1_kPa"], 119.0);
}
