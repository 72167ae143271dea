#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdg/harness.hpp"

namespace sdg {
namespace {

namespace fs = std::filesystem;

std::string example(const std::string& name) {
  const char* dir = std::getenv("SDG_EXAMPLES");
  return ((dir ? fs::path(dir) : fs::path("examples_data")) / name).string();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sdgforms");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json eval(const std::string& op, const std::string& input) {
  const Outcome r = cli({"eval", "--op", op, "--input", input});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  return Json::parse(r.out);
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sdgforms_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const Json kMinusPlus = Json::array({Json::array({"-1", "0"}), Json::array({"0", "1"})});

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({"verify", "--suite", "nosuch"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--rep", "adjoint", "--groupoid", "pair"}).code, kExitUsage);
  EXPECT_EQ(cli({"eval", "--op", "nosuch", "--input", example("unit_square.json")}).code, kExitUsage);
  EXPECT_EQ(cli({"eval", "--op", "dplus", "--input", example("missing.json")}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
}

TEST(Cli, HelpAndVersion) {
  const Outcome help = cli({"--help"});
  EXPECT_EQ(help.code, kExitPass);
  EXPECT_NE(help.out.find("verify"), std::string::npos);
  EXPECT_EQ(cli({"verify", "--help"}).code, kExitPass);
}

TEST(Cli, BracketOfCommutingPairIsZero) {
  const Json zero = Json::array({Json::array({"0", "0"}), Json::array({"0", "0"})});
  EXPECT_EQ(eval("bracket", example("commuting.json")), zero);
  EXPECT_EQ(eval("bracket", example("noncommuting.json")), kMinusPlus);
}

TEST(Cli, UnitSquareOperators) {
  const std::string input = example("unit_square.json");
  for (const auto* op : {"dcontour", "mcdefect", "bracket"}) EXPECT_EQ(eval(op, input), kMinusPlus) << op;
  const Json zero = Json::array({Json::array({"0", "0"}), Json::array({"0", "0"})});
  for (const auto* op : {"dplus", "dtimes", "classical"}) EXPECT_EQ(eval(op, input), zero) << op;
}

TEST(Cli, TomlInstances) {
  EXPECT_EQ(eval("dplus", example("square_path.toml")), Json::array({Json::array({"2"})}));
  const Json gauge = eval("dplus", example("gauge_instance.toml"));
  EXPECT_EQ(gauge, eval("dtimes", example("gauge_instance.toml")));
  EXPECT_EQ(gauge, Json::array({Json::array({"49/6", "14"}), Json::array({"-14/3", "28/3"})}));
  EXPECT_EQ(eval("mcdefect", example("gauge_instance.toml")), eval("bracket", example("gauge_instance.toml")));
}

TEST_F(CliFiles, ConfigFileWithFlagOverride) {
  const std::string config = write("c.toml", "suite = \"bracket_oracle\"\nseed = 5\ntrials = 200\ntiming = false\n");
  const Outcome r = cli({"verify", "--config", config, "--trials", "4", "--json"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_EQ(report["config"]["seed"], 5);
  EXPECT_EQ(report["reports"].size(), 1u);
  EXPECT_EQ(report["reports"][0]["trials"], 4);
  EXPECT_EQ(report["reports"][0]["millis"], 0);
}

TEST_F(CliFiles, OutputThenReport) {
  const std::string out = path("report.json");
  const Outcome v = cli({"verify", "--suite", "jacobi", "--trials", "3", "--output", out});
  ASSERT_EQ(v.code, kExitPass) << v.err;
  EXPECT_NE(v.out.find("jacobi"), std::string::npos);
  std::ifstream file(out);
  const Json report = Json::parse(file);
  EXPECT_TRUE(validate_report_schema(report).empty());
  const Outcome r = cli({"report", "--input", out});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("pass"), std::string::npos);

  Json failed = report;
  failed["reports"][0]["failures"] = Json::array({Json{{"trial", 2}, {"property", "jacobi"}}});
  failed["passed"] = false;
  EXPECT_EQ(cli({"report", "--input", write("failed.json", failed.dump())}).code, kExitFailure);
  EXPECT_EQ(cli({"report", "--input", write("junk.json", "{}")}).code, kExitUsage);
}

TEST_F(CliFiles, WitnessReplay) {
  std::ifstream file(example("unit_square.json"));
  const Json instance = Json::parse(file);
  const Json witness = {
      {"trial", 0}, {"property", "mc_formula"}, {"instance", instance}, {"lhs_op", "mcdefect"}, {"rhs_op", "bracket"}};
  const std::string input = write("witness.json", witness.dump());
  EXPECT_EQ(eval(witness["lhs_op"], input), eval(witness["rhs_op"], input));
}

TEST_F(CliFiles, ResidueExitCode) {
  const Json instance = {{"form", {{"kind", "planted_invalid"}, {"degree", 1}, {"fiber_dim", 2}}},
                         {"microcube",
                          {{"groupoid", "pair"},
                           {"arity", 2},
                           {"base", {"0", "1"}},
                           {"table",
                            {{{"monomial", {1}}, {"block", {"1", "0"}}},
                             {{"monomial", {2}}, {"block", {"2", "1"}}},
                             {{"monomial", {1, 2}}, {"block", {"1", "0"}}}}}}}};
  const Outcome r = cli({"eval", "--op", "dplus", "--input", write("planted.json", instance.dump())});
  EXPECT_EQ(r.code, kExitResidue);
  EXPECT_NE(r.err.find("residue"), std::string::npos);
}

}  // namespace
}  // namespace sdg
