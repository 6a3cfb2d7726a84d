#include "engelcr/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace engelcr;
using nlohmann::json;

namespace {

const std::string kManifolds = ENGELCR_MANIFOLDS;

struct CliRun
{
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args)
{
  args.insert(args.begin(), "engelcr");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text)
{
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

} // namespace

TEST(Cli, CubicIsFlat)
{
  const CliRun r = run({"flatness", kManifolds + "/cubic.json"});
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["flat"].get<bool>());
  EXPECT_LT(j["max_residual"].get<double>(), 1e-9);
  EXPECT_EQ(j["points"].size(), 3u);
}

TEST(Cli, B3ModelInvariants)
{
  const CliRun r = run({"invariants", kManifolds + "/normal_form_b3.json"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  const json& inv = j["points"][0]["invariants"];
  EXPECT_EQ(inv[1]["name"], "R^y_y2");
  EXPECT_NEAR(inv[1]["values"][0]["value"].get<double>(), -0.15, 1e-9);
  EXPECT_EQ(inv[3]["weight"], 3);
  EXPECT_FALSE(j["verdict"]["flat"].get<bool>());
  EXPECT_EQ(j["gauge"]["jet_order"], 5);
  EXPECT_EQ(run({"flatness", kManifolds + "/normal_form_b3.json"}).code, 1);
}

TEST(Cli, InvariantsWithTableAndFibers)
{
  const CliRun r = run({"invariants", kManifolds + "/cubic.json", "--max-homogeneity", "4", "--points",
                     "0.1,0.2,0.3,0.4", "--t", "1", "--t", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["points"].size(), 1u);
  EXPECT_EQ(j["gauge"]["jet_order"], 6);
  EXPECT_EQ(j["points"][0]["table"].size(), 29u);
  EXPECT_EQ(j["points"][0]["invariants"][0]["values"].size(), 2u);
}

TEST(Cli, UmbilicVerdicts)
{
  EXPECT_EQ(run({"umbilic", kManifolds + "/umbilic.json"}).code, 0);
  const CliRun r = run({"umbilic", kManifolds + "/normal_form_b8.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NEAR(json::parse(r.out)["points"][0]["invariants_at_t1"]["R^y_x3"].get<double>(), -0.6,
              1e-9);
}

TEST(Cli, DegenerateGraphIsAnError)
{
  const CliRun r = run({"flatness", kManifolds + "/degenerate.json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "EngelDegenerate");
}

TEST(Cli, Cohomology)
{
  const CliRun r = run({"cohomology"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["dimensions"]["C2"], 30);
  EXPECT_EQ(j["dimensions"]["Z2"], 17);
  EXPECT_EQ(j["dimensions"]["H2"], 4);
  EXPECT_EQ(j["h2_histogram"], (json{{"2", 3}, {"3", 1}}));
  EXPECT_TRUE(j["checks"]["d_squared_zero"].get<bool>());
  EXPECT_EQ(j["representatives"].size(), 4u);
}

TEST(Cli, CheckSuite)
{
  EXPECT_EQ(run({"check", kManifolds + "/cubic.json"}).code, 0);
  const CliRun r = run({"check", kManifolds + "/perturbed.json", "--order", "6"});
  ASSERT_EQ(r.code, 0) << r.out;
  const json report = json::parse(r.out);
  bool saw_h4 = false;
  for (const json& c : report["points"][1]["checks"])
    if (c["name"] == "two_route_homogeneity_4") {
      saw_h4 = true;
      EXPECT_LT(c["residual"].get<double>(), 1e-5);
    }
  EXPECT_TRUE(saw_h4);
  const CliRun low = run({"check", kManifolds + "/perturbed.json", "--order", "3"});
  EXPECT_EQ(low.code, 2);
  EXPECT_EQ(json::parse(low.out)["error"]["kind"], "InsufficientOrder");
}

TEST(Cli, ParseErrors)
{
  const std::string bad = write_temp("engelcr_bad.json", "{\"format\": 1,\n \"kind\": \"graph\",\n \"F1\": [[[2,0] 1.0]]}");
  const CliRun r = run({"invariants", bad});
  EXPECT_EQ(r.code, 2);
  const std::string msg = json::parse(r.out)["error"]["message"];
  EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;

  const std::string idx = write_temp("engelcr_idx.json", R"({"format": 1, "kind": "graph", "F1": [[[2, 0, 1], 1.0]]})");
  EXPECT_EQ(run({"invariants", idx}).code, 2);
  const std::string kind = write_temp("engelcr_kind.json", R"({"format": 1, "kind": "sphere"})");
  EXPECT_EQ(run({"invariants", kind}).code, 2);
  const std::string fmt = write_temp("engelcr_fmt.json", R"({"format": 2, "kind": "cubic"})");
  EXPECT_EQ(run({"invariants", fmt}).code, 2);
  EXPECT_EQ(run({"invariants", kManifolds + "/cubic.json", "--points", "1,2,3"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"invariants", "/nonexistent/file.json"}).code, 2);
}

TEST(Cli, ReportsAreDeterministic)
{
  const std::vector<std::string> args{"check", kManifolds + "/perturbed.json", "--order", "6"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> inv{"invariants", kManifolds + "/ode.json"};
  EXPECT_EQ(run(inv).out, run(inv).out);
}

TEST(Cli, BinaryExitCodes)
{
  const std::string tool = ENGELCR_TOOL;
  const auto status = [&](const std::string& args) {
    const int s = std::system((tool + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("flatness " + kManifolds + "/cubic.json"), 0);
  EXPECT_EQ(status("umbilic " + kManifolds + "/normal_form_b8.json"), 1);
  EXPECT_EQ(status("flatness " + kManifolds + "/degenerate.json"), 2);
}
