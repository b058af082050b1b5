#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "spekkens/cli.hpp"
#include "spekkens/errors.hpp"

using namespace spekkens;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const std::vector<std::string>& args) { return json::parse(invoke(args).out); }

}  // namespace

TEST(Config, DefaultsAreValid) {
  const cli::RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.seed, 0u);
  EXPECT_EQ(c.format, "json");
}

TEST(Config, HardCaps) {
  const auto bad = [](auto mutate) {
    cli::RunConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](cli::RunConfig& c) { c.d = 1; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](cli::RunConfig& c) { c.d = 8; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](cli::RunConfig& c) { c.n = 0; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](cli::RunConfig& c) { c.n = 7; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](cli::RunConfig& c) { c.format = "xml"; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](cli::RunConfig& c) { c.tolerance = 0.0; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](cli::RunConfig& c) { c.tolerance = 0.1; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](cli::RunConfig& c) { c.guard = 0; }).validate(), InvalidInput);
}

TEST(Config, FromJson) {
  const auto c = cli::RunConfig::from_json_text(R"({"d": 3, "n": 2, "seed": 9, "tolerance": 1e-6})");
  EXPECT_EQ(c.d, 3);
  EXPECT_EQ(c.n, 2);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_DOUBLE_EQ(c.tolerance, 1e-6);
  EXPECT_THROW(cli::RunConfig::from_json_text(R"({"dimension": 3})"), InvalidInput);
  EXPECT_THROW(cli::RunConfig::from_json_text(R"({"d": 9})"), InvalidInput);
}

TEST(ExitCodes, PassNegativeUsageGuard) {
  EXPECT_EQ(invoke({"wigner", "--state", "+Z", "--spec", "factorisable-rebit"}).code, cli::kPass);
  EXPECT_EQ(invoke({"wigner", "--state", "T|+>", "--spec", "factorisable-rebit"}).code, cli::kNegative);
  EXPECT_EQ(invoke({"wigner", "--state", "[1, 1, -1]", "--spec", "gross", "--d", "3"}).code, cli::kNegative);
  EXPECT_EQ(invoke({"wigner", "--state", "+XQ", "--spec", "delfosse-rebit"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"wigner", "--state", "+Z", "--spec", "delfosse-rebit", "--tol", "0.5"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"subtheory", "observables", "--spec", "gross", "--d", "7", "--n", "3"}).code, cli::kGuard);
}

TEST(Diagnostics, ParseErrorsCarryColumn) {
  const auto r = invoke({"wigner", "--state", "+XX,+ZQ", "--spec", "delfosse-rebit"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("column 7"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Reports, Envelope) {
  const auto j = report({"--seed", "5", "witness", "chsh"});
  EXPECT_EQ(j.at("schema_version"), cli::kSchemaVersion);
  EXPECT_EQ(j.at("command"), "witness");
  EXPECT_EQ(j.at("seed"), 5);
  EXPECT_TRUE(j.at("passed").get<bool>());
}

TEST(Reports, WignerEntries) {
  const auto j = report({"wigner", "--state", "+Z", "--spec", "gross", "--d", "3"});
  ASSERT_EQ(j.at("entries").size(), 9u);
  EXPECT_DOUBLE_EQ(j.at("sum").get<double>(), 1.0);
  EXPECT_TRUE(j.at("nonnegative").get<bool>());
  EXPECT_NEAR(j.at("entries")[0][1].get<double>(), 1.0 / 3.0, 1e-12);
}

TEST(Reports, SubtheoryVerify) {
  const auto j = report({"subtheory", "verify", "minimal-rebit", "--n", "2"});
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_EQ(invoke({"subtheory", "verify", "qubit-stabilizer", "--n", "2"}).code, cli::kNegative);
}

TEST(Reports, TableFormat) {
  const auto r = invoke({"witness", "ghz", "--format", "table"});
  EXPECT_EQ(r.code, cli::kPass);
  EXPECT_NE(r.out.find("command\t\"witness\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("report.assignments_checked\t64"), std::string::npos) << r.out;
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--seed", "3", "equivalence", "--sweep", "20", "--n", "2"},
           {"--seed", "8", "witness", "ghz"},
           {"inject", "--gate", "CZ", "--input", "++"}}) {
    const auto a = invoke(args);
    const auto b = invoke(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
  EXPECT_NE(invoke({"--seed", "3", "equivalence", "--sweep", "20", "--n", "2"}).out,
            invoke({"--seed", "4", "equivalence", "--sweep", "20", "--n", "2"}).out);
}

TEST(Output, OutDirReceivesReport) {
  const auto dir = std::filesystem::temp_directory_path() / "spekkens_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ::setenv("SPEKKENS_OUT_DIR", dir.c_str(), 1);
  const auto r = invoke({"witness", "chsh"});
  ::unsetenv("SPEKKENS_OUT_DIR");
  std::ifstream in(dir / "witness.json");
  ASSERT_TRUE(in.good());
  std::stringstream file;
  file << in.rdbuf();
  EXPECT_EQ(json::parse(file.str()), json::parse(r.out));
  std::filesystem::remove_all(dir);
}

TEST(Config, FileIsApplied) {
  const auto path = std::filesystem::temp_directory_path() / "spekkens_cli_config.json";
  std::ofstream(path) << R"({"seed": 11, "format": "json"})";
  const auto j = report({"--config", path.string(), "witness", "chsh"});
  EXPECT_EQ(j.at("seed"), 11);
  std::ofstream(path) << R"({"colour": "red"})";
  EXPECT_EQ(invoke({"--config", path.string(), "witness", "chsh"}).code, cli::kUsage);
  std::filesystem::remove(path);
}
