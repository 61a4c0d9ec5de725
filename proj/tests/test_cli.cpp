#include "n32/cli.hpp"
#include "n32/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using n32::cli::run;

namespace {

std::string tmp(const std::string& name)
{
  return (std::filesystem::temp_directory_path() / ("n32_cli_" + name)).string();
}

n32::Json load(const std::string& path)
{
  std::ifstream f(path);
  return n32::Json::parse(f);
}

} // namespace

TEST_CASE("usage errors")
{
  CHECK(run({}) == n32::cli::kUsage);
  CHECK(run({"kernel"}) == n32::cli::kUsage);
  CHECK(run({"dist", "eval", "--x", "1,2"}) == n32::cli::kUsage);
  CHECK(run({"nonsense"}) == n32::cli::kUsage);
  CHECK(run({"--help"}) == n32::cli::kOk);
}

TEST_CASE("results and manifest")
{
  const auto out = tmp("dist.json");
  REQUIRE(run({"--seed", "5", "--out", out, "dist", "eval", "--x", "3,4,0"}) == 0);
  const auto r = load(out);
  CHECK(r["d"].get<double>() == doctest::Approx(5));
  const auto m = load(out + ".manifest.json");
  CHECK(m["command"] == "dist eval");
  CHECK(m["seed"] == 5);
  CHECK(m["exit_code"] == 0);
  CHECK(m.contains("seconds"));
  CHECK(m.contains("versions"));

  // seed after the subcommand works too
  REQUIRE(run({"algebra", "check", "--degrees", "2", "--triples", "50", "--seed", "3", "--out", out}) == 0);
  CHECK(load(out)["passed"] == true);
  CHECK(load(out + ".manifest.json")["seed"] == 3);
}

TEST_CASE("exit codes")
{
  const auto out = tmp("k.json");
  // t <= 0 is invalid input
  CHECK(run({"--out", out, "kernel", "eval", "--t", "-1"}) == n32::cli::kUsage);
  // a quadrature that fails its own convergence gate
  CHECK(run({"--out", out, "kernel", "eval", "--gradient", "--raw", "--nodes", "2", "--radius", "10"}) ==
        n32::cli::kNonConvergence);
  CHECK(load(out)["error"] == "non-convergence");
  CHECK(run({"--out", out, "verify", "rpoincare", "--paths", "2000"}) == 0);
  CHECK(load(out)["inequality"] == "reverse_poincare");
  const auto csv = tmp("rp.csv");
  CHECK(run({"--out", out, "--csv", csv, "verify", "dm", "--paths", "2000"}) == 0);
  CHECK(std::filesystem::file_size(csv) > 0);
}

TEST_CASE("config file")
{
  const auto cfg = tmp("cfg.toml");
  {
    std::ofstream f(cfg);
    f << "seed = 9\n[dist.eval]\nx = [0, 0, 0]\ny = [0, 0, 1]\n";
  }
  const auto out = tmp("cfg.json");
  REQUIRE(run({"--config", cfg, "--out", out, "dist", "eval"}) == 0);
  CHECK(load(out)["d"].get<double>() == doctest::Approx(std::sqrt(4 * 3.14159265358979)).epsilon(1e-6));
  CHECK(load(out + ".manifest.json")["seed"] == 9);
}
