#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "tcert/error.hpp"
#include "tcert/int_series.hpp"

using namespace tcert;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tcert_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, ExpandJ) {
  const fs::path out = scratch("j.txt");
  const Outcome r = run({"expand", "--form", "j", "--trunc", "2", "--out", out.string()});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "expand");
  EXPECT_EQ(j["exit_code"], 0);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_TRUE(j["provenance"].contains("constants"));
  std::ifstream in(out);
  const IntSeries s = read_series(in);
  EXPECT_EQ(s.coeff(-1), 1);
  EXPECT_EQ(s.coeff(0), 744);
  EXPECT_EQ(s.coeff(1), 196884);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"expand", "--form", "theta", "--out", "x"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"modpoly", "--p", "11", "--compute"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"chain", "run", "--q", "1/2", "--N", "4", "--h-q", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"height", "--minpoly", "1,x"}).code, cli::kExitUsage);
}

TEST(Cli, HelpPasses) { EXPECT_EQ(run({"--help"}).code, cli::kExitPass); }

TEST(Cli, PrimesClaimViolationExitsOne) {
  const Outcome r = run({"primes", "certify", "--limit", "1000"});
  EXPECT_EQ(r.code, cli::kExitViolation);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["exit_code"], 1);
}

TEST(Cli, HeightReport) {
  const Outcome r = run({"height", "--minpoly", "-2,0,1"});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["degree"], 2);
}

TEST(Cli, Cutoff) {
  const Outcome r = run({"chain", "cutoff", "--deg-q", "2", "--N", "10"});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["prime"], 67);
}

TEST(Cli, ConfigRoundTrip) {
  cli::RunConfig c;
  c.precision = 192;
  c.sieve_limit = 5000;
  c.trunc.expand = 7;
  c.constants_path = cli::default_constants_path();
  const cli::RunConfig back = cli::config_from_json(cli::to_json(c));
  EXPECT_EQ(back.precision, 192);
  EXPECT_EQ(back.sieve_limit, 5000u);
  EXPECT_EQ(back.trunc.expand, 7);
  EXPECT_EQ(cli::to_json(back), cli::to_json(c));
}

TEST(Cli, ConfigValidation) {
  cli::RunConfig c;
  c.precision = 8;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.sieve_limit = 10;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Cli, ConfigFileAndEnvironment) {
  const fs::path cfg = scratch("cfg.json");
  {
    cli::RunConfig c;
    c.trunc.expand = 3;
    c.constants_path = cli::default_constants_path();
    std::ofstream(cfg) << cli::to_json(c).dump(2);
  }
  const fs::path out = scratch("e.txt");
  ASSERT_EQ(run({"--config", cfg.string(), "expand", "--form", "delta", "--out", out.string()}).code, 0);
  std::ifstream in(out);
  EXPECT_EQ(read_series(in).trunc(), 3);

  ::setenv("TCERT_CONFIG", cfg.string().c_str(), 1);
  ASSERT_EQ(run({"expand", "--form", "delta", "--out", out.string()}).code, 0);
  std::ifstream in2(out);
  EXPECT_EQ(read_series(in2).trunc(), 3);
  ::setenv("TCERT_CONFIG", "/nonexistent/tcert.json", 1);
  EXPECT_NE(run({"chain", "cutoff", "--N", "3"}).code, 0);
  ::unsetenv("TCERT_CONFIG");
}

TEST(Cli, ReportFile) {
  const fs::path rep = scratch("rep.json");
  const Outcome r = run({"--report", rep.string(), "chain", "cutoff", "--N", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(rep);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["command"], "chain cutoff");
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"modpoly", "--p", "3", "--certify"};
  const Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
}
