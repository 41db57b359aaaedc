#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracsteady/clirun.hpp"
#include "fracsteady/io.hpp"

using namespace fracsteady;
namespace fs = std::filesystem;

namespace {

int cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"fracsteady"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string scratch(const std::string& leaf) {
  return (fs::path("cli_scratch") / leaf).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

nlohmann::json slurp_json(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

// Writes a config that keeps runs fast and s inside the hypothesis range.
std::string small_config(const std::string& name, const std::string& out_dir,
                         const std::string& model_extra = "") {
  const std::string path = scratch(name);
  write_text_file(path, std::string(R"({
    "domain": {"n": 64},
    "operator": {"s": 0.45},
    "model": {"K": 0.68, "c": 1.0, "eps": 0.002)") +
                            model_extra + R"(},
    "output": {"dir": ")" + out_dir + R"("}
  })");
  return path;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(cli({"--help"}) == 0);
  CHECK(cli({}) == 2);                              // a subcommand is required
  CHECK(cli({"integrate"}) == 2);                   // unknown subcommand
  CHECK(cli({"--config"}) == 2);                    // option missing its value
  CHECK(cli({"--config", "no_such.json", "eig"}) == 2);
  write_text_file(scratch("broken.json"), "{oops");
  CHECK(cli({"--config", scratch("broken.json").c_str(), "eig"}) == 2);
  write_text_file(scratch("bad_model.json"), R"({"model": {"K": -1}})");
  CHECK(cli({"--config", scratch("bad_model.json").c_str(), "eig"}) == 2);
}

TEST_CASE("eig subcommand writes the eigenpair artifacts") {
  const std::string cfg = small_config("eig.json", "cli_scratch/eig_out");
  CHECK(cli({"--config", cfg.c_str(), "eig"}) == 0);
  CHECK(fs::exists("cli_scratch/eig_out/phi1.csv"));
  const nlohmann::json j = slurp_json("cli_scratch/eig_out/eig.json");
  CHECK(j["n"] == 64);
  CHECK(j["s"] == 0.45);
  CHECK(j["lambda1"].get<double>() > 0.0);
  CHECK(j["residual"].get<double>() <= 1e-9);
}

TEST_CASE("torsion subcommand reports the closed-form comparison") {
  const std::string cfg = small_config("torsion.json", "cli_scratch/torsion_out");
  CHECK(cli({"--config", cfg.c_str(), "torsion"}) == 0);
  CHECK(fs::exists("cli_scratch/torsion_out/torsion.csv"));
  const nlohmann::json j = slurp_json("cli_scratch/torsion_out/torsion.json");
  CHECK(j["sup_error_rel"].get<double>() > 0.0);
  CHECK(j["sup_error_rel"].get<double>() < 0.05);
  CHECK(j["amplitude"].get<double>() > 0.0);
}

TEST_CASE("solve subcommand produces a full report") {
  const std::string cfg = small_config("solve.json", "cli_scratch/solve_out");
  CHECK(cli({"--config", cfg.c_str(), "solve", "--svg"}) == 0);
  CHECK(fs::exists("cli_scratch/solve_out/solution.csv"));
  CHECK(fs::exists("cli_scratch/solve_out/thresholds.json"));
  CHECK(fs::exists("cli_scratch/solve_out/solution.svg"));
  const nlohmann::json report = slurp_json("cli_scratch/solve_out/report.json");
  CHECK(report["subsolution_check"]["pass"] == true);
  CHECK(report["supersolution_check"]["pass"] == true);
  CHECK(report["minimal_branch"]["converged"] == true);
  CHECK(report["maximal_branch"]["converged"] == true);
  CHECK(report["newton_refinement"]["singular_jacobian"] == false);
  CHECK(report["lambda"].get<double>() > report["lambda1"].get<double>());
  const nlohmann::json thresholds = slurp_json("cli_scratch/solve_out/thresholds.json");
  CHECK(thresholds.size() == 8);
}

TEST_CASE("identical configs give byte-identical artifacts") {
  const std::string cfg1 = small_config("det1.json", "cli_scratch/det1");
  const std::string cfg2 = small_config("det2.json", "cli_scratch/det2");
  CHECK(cli({"--config", cfg1.c_str(), "solve"}) == 0);
  CHECK(cli({"--config", cfg2.c_str(), "solve"}) == 0);
  CHECK(slurp("cli_scratch/det1/solution.csv") == slurp("cli_scratch/det2/solution.csv"));
  CHECK(slurp("cli_scratch/det1/report.json") == slurp("cli_scratch/det2/report.json"));
}

TEST_CASE("subcritical lambda triggers the nonexistence probe") {
  const std::string cfg = small_config("sub.json", "cli_scratch/sub_out",
                                       R"(, "lambda_over_lambda1": 0.9)");
  CHECK(cli({"--config", cfg.c_str(), "solve"}) == 0);
  const nlohmann::json report = slurp_json("cli_scratch/sub_out/report.json");
  CHECK(report["certificate_on_phi1"]["violated"] == true);
  CHECK(report["certificate_fired_on_all"] == true);
  CHECK(report["newton_iterates_checked"].get<int>() > 0);
  CHECK(report["lambda"].get<double>() < report["lambda1"].get<double>());
  CHECK_FALSE(fs::exists("cli_scratch/sub_out/solution.csv"));
}

TEST_CASE("sweep subcommand emits the existence map") {
  const std::string path = scratch("sweep.json");
  write_text_file(path, R"({
    "domain": {"n": 48},
    "operator": {"s": 0.45},
    "sweep": {"param1": {"name": "K", "values": [0.68, 0.75]},
              "param2": {"name": "eps", "values": [0.001]}},
    "output": {"dir": "cli_scratch/sweep_out"}
  })");
  CHECK(cli({"--config", path.c_str(), "sweep"}) == 0);
  const std::string csv = slurp("cli_scratch/sweep_out/map.csv");
  CHECK(csv.rfind("param1,param2,", 0) == 0);
  CHECK(fs::exists("cli_scratch/sweep_out/map.svg"));
}

TEST_CASE("verify subcommand passes on a small grid") {
  const std::string path = scratch("verify.json");
  write_text_file(path, R"({
    "domain": {"n": 128},
    "operator": {"s": 0.45},
    "output": {"dir": "cli_scratch/verify_out"}
  })");
  CHECK(cli({"--config", path.c_str(), "verify"}) == 0);
}

TEST_CASE("malformed seed override is a config error") {
  REQUIRE(setenv("FRACSTEADY_SEED", "not-a-number", 1) == 0);
  const std::string cfg = small_config("seed.json", "cli_scratch/seed_out");
  CHECK(cli({"--config", cfg.c_str(), "verify"}) == 2);
  REQUIRE(setenv("FRACSTEADY_SEED", "12345", 1) == 0);
  CHECK(verification_seed() == 12345ULL);
  REQUIRE(unsetenv("FRACSTEADY_SEED") == 0);
  CHECK(verification_seed() == 20250814ULL);
}

TEST_CASE("operator dump option works on any subcommand") {
  const std::string path = scratch("dump.json");
  write_text_file(path, R"({
    "domain": {"n": 8},
    "operator": {"s": 0.45},
    "output": {"dir": "cli_scratch/dump_out"}
  })");
  const std::string dump = scratch("A.txt");
  CHECK(cli({"--config", path.c_str(), "--dump-operator", dump.c_str(), "eig"}) == 0);
  std::ifstream in(dump);
  REQUIRE(bool(in));
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
}
