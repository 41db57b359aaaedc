#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracsteady/config.hpp"
#include "fracsteady/fracop.hpp"
#include "fracsteady/io.hpp"
#include "fracsteady/model.hpp"
#include "fracsteady/spectral.hpp"

using namespace fracsteady;
namespace fs = std::filesystem;

namespace {

std::string scratch(const std::string& leaf) {
  return (fs::path("io_scratch") / leaf).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("full-precision formatting round-trips") {
  for (double v : {1.0 / 3.0, -0.1, 1e-300, 6.02214076e23, 0.0, -2.5, 1.0}) {
    CHECK(std::stod(format_full(v)) == v);
  }
  CHECK(format_svg(0.5) == "0.5");
  CHECK(format_svg(1.0 / 3.0) == "0.333333");
}

TEST_CASE("solution csv round trip is exact") {
  const GridPtr grid = build_grid(Interval{-1.0, 1.0}, 32);
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  Eigen::VectorXd v(32);
  for (int i = 0; i < 32; ++i) v[i] = dist(rng);
  const GridFunction u(grid, v);
  const std::string path = scratch("u.csv");
  write_solution_csv(u, path);
  const std::string text = slurp(path);
  CHECK(text.rfind("x,value\n", 0) == 0);
  const GridFunction back = read_solution_csv(grid, path);
  for (int i = 0; i < 32; ++i) CHECK(back.values[i] == v[i]);
}

TEST_CASE("csv reader rejects malformed input") {
  const GridPtr grid = build_grid(Interval{-1.0, 1.0}, 4);
  CHECK_THROWS_AS(read_solution_csv(grid, scratch("missing.csv")), IoError);
  write_text_file(scratch("badheader.csv"), "x,y\n0,1\n");
  CHECK_THROWS_AS(read_solution_csv(grid, scratch("badheader.csv")), IoError);
  write_text_file(scratch("badrow.csv"), "x,value\n0 1\n");
  CHECK_THROWS_AS(read_solution_csv(grid, scratch("badrow.csv")), IoError);
  write_text_file(scratch("short.csv"), "x,value\n0,1\n0.5,2\n");
  CHECK_THROWS_AS(read_solution_csv(grid, scratch("short.csv")), IoError);
}

TEST_CASE("operator dump has one row per node") {
  const int n = 8;
  const GridPtr grid = build_grid(Interval{-1.0, 1.0}, n);
  const OperatorMatrix A = assemble_operator(grid, FracOrder(0.5));
  const std::string path = scratch("A.txt");
  write_operator_dump(A, path);
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::vector<double> entries;
    double x;
    while (row >> x) entries.push_back(x);
    CHECK(static_cast<int>(entries.size()) == n);
    if (rows == 0) CHECK(entries[0] == A.entries()(0, 0));
    ++rows;
  }
  CHECK(rows == n);
}

TEST_CASE("threshold json carries the fixed key set") {
  const GridPtr grid = build_grid(Interval{-1.0, 1.0}, 64);
  const OperatorMatrix A = assemble_operator(grid, FracOrder(0.5));
  const EigenPair eig = principal_eigenpair(A);
  const GridFunction e = torsion_function(A);
  const GridFunction profile = harvesting_profile(grid, ProfileKind::Sine);
  const ModelParams p(2.0 * eig.lambda1, 0.68, 1.0, 0.002, FracOrder(0.5), profile);
  const ThresholdSet t = thresholds(p, eig, e);
  const nlohmann::json j = threshold_json(t);
  CHECK(j.size() == 8);
  for (const char* key : {"alpha", "theta", "eta", "m_lambda", "sigma_lower", "sigma_upper",
                          "eps_star", "A_super"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["eta"].get<double>() == t.eta);
  CHECK(j["eps_star"].get<double>() == t.eps_star);
}

TEST_CASE("json files end with a newline and parse back") {
  const nlohmann::json j = {{"a", 1}, {"b", "two"}};
  const std::string path = scratch("obj.json");
  write_json_file(j, path);
  const std::string text = slurp(path);
  REQUIRE_FALSE(text.empty());
  CHECK(text.back() == '\n');
  CHECK(nlohmann::json::parse(text) == j);
}

TEST_CASE("svg overlay is deterministic and labels all three curves") {
  const GridPtr grid = build_grid(Interval{-1.0, 1.0}, 32);
  Eigen::VectorXd mid(32), lo(32), hi(32);
  for (int i = 0; i < 32; ++i) {
    const double x = grid->node(i);
    mid[i] = 1.0 - x * x;
    lo[i] = 0.5 * mid[i];
    hi[i] = 1.5 * mid[i];
  }
  const GridFunction lower(grid, lo), solution(grid, mid), upper(grid, hi);
  svg_solution_overlay(lower, solution, upper, scratch("one.svg"));
  svg_solution_overlay(lower, solution, upper, scratch("two.svg"));
  const std::string a = slurp(scratch("one.svg"));
  CHECK(a == slurp(scratch("two.svg")));
  CHECK(a.find("<svg") != std::string::npos);
  int polylines = 0;
  for (size_t pos = a.find("<polyline"); pos != std::string::npos;
       pos = a.find("<polyline", pos + 1)) {
    ++polylines;
  }
  CHECK(polylines == 3);
  for (const char* label : {"lower", "solution", "upper"}) {
    CHECK(a.find(label) != std::string::npos);
  }
}

TEST_CASE("write failures surface as io errors") {
  write_text_file(scratch("blocker"), "plain file\n");
  CHECK_THROWS_AS(write_text_file(scratch("blocker/sub/file.txt"), "x"), IoError);
}

TEST_CASE("empty config yields the documented defaults") {
  const RunConfig cfg = parse_config(nlohmann::json::object());
  const RunConfig def = default_config();
  CHECK(cfg.interval.a == -1.0);
  CHECK(cfg.interval.b == 1.0);
  CHECK(cfg.n == 256);
  CHECK(cfg.s == 0.5);
  CHECK_FALSE(cfg.lambda.has_value());
  CHECK_FALSE(cfg.lambda_over_lambda1.has_value());
  CHECK(cfg.K == 0.68);
  CHECK(cfg.c == 1.0);
  CHECK(cfg.eps == 0.002);
  CHECK(cfg.profile == ProfileKind::Sine);
  CHECK(cfg.output_dir == "out");
  CHECK(cfg.workers == 4);
  CHECK(cfg.sweep1.name == def.sweep1.name);
  CHECK(cfg.sweep1.values == def.sweep1.values);
  CHECK(cfg.sweep2.name == def.sweep2.name);
  CHECK(cfg.sweep2.values == def.sweep2.values);
  // Default lambda is twice the principal eigenvalue.
  CHECK(cfg.resolve_lambda(1.2) == doctest::Approx(2.4).epsilon(1e-15));
}

TEST_CASE("lambda resolution honours the two spellings") {
  RunConfig cfg = default_config();
  cfg.lambda = 3.1;
  CHECK(cfg.resolve_lambda(99.0) == 3.1);
  cfg.lambda.reset();
  cfg.lambda_over_lambda1 = 1.5;
  CHECK(cfg.resolve_lambda(2.0) == doctest::Approx(3.0).epsilon(1e-15));
  cfg.lambda = 3.1;
  CHECK_THROWS_AS(cfg.resolve_lambda(2.0), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(
                      R"({"model": {"lambda": 2.0, "lambda_over_lambda1": 2.0}})")),
                  ConfigError);
}

TEST_CASE("config validation rejects bad input") {
  CHECK_THROWS_AS(parse_config(nlohmann::json::array()), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"mystery": 1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"domain": {"volume": 3}})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"domain": {"a": 1.0, "b": -1.0}})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"domain": {"n": 1}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"operator": {"s": 1.0}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"model": {"K": 0.0}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"model": {"profile": "step"}})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"output": {"workers": 0}})")),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(nlohmann::json::parse(R"({"sweep": {"param1": {"name": "K"}}})")),
      ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(
                      R"({"sweep": {"param1": {"name": "eps", "values": [0.001]}}})")),
                  ConfigError);  // collides with the default second axis
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(
                      R"({"sweep": {"param1": {"name": "u0", "values": [1]}}})")),
                  ConfigError);
}

TEST_CASE("config sections are applied") {
  const auto j = nlohmann::json::parse(R"({
    "domain": {"a": 0.0, "b": 3.0, "n": 64},
    "operator": {"s": 0.75},
    "model": {"lambda_over_lambda1": 1.8, "K": 0.5, "c": 0.0, "eps": 0.001, "profile": "bump"},
    "tolerances": {"tol_solve": 1e-9},
    "sweep": {"param1": {"name": "lambda", "values": [2.0, 3.0]},
              "param2": {"name": "K", "linspace": [0.4, 0.8, 3]}},
    "output": {"dir": "artifacts", "workers": 2}
  })");
  const RunConfig cfg = parse_config(j);
  CHECK(cfg.interval.a == 0.0);
  CHECK(cfg.interval.b == 3.0);
  CHECK(cfg.n == 64);
  CHECK(cfg.s == 0.75);
  CHECK(cfg.lambda_over_lambda1.value() == 1.8);
  CHECK(cfg.K == 0.5);
  CHECK(cfg.c == 0.0);
  CHECK(cfg.eps == 0.001);
  CHECK(cfg.profile == ProfileKind::Bump);
  CHECK(cfg.tol.tol_solve == 1e-9);
  CHECK(cfg.tol.symmetry == 1e-12);
  CHECK(cfg.sweep1.name == "lambda");
  CHECK(cfg.sweep1.values == std::vector<double>{2.0, 3.0});
  CHECK(cfg.sweep2.name == "K");
  CHECK(cfg.sweep2.values.size() == 3);
  CHECK(cfg.sweep2.values[1] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(cfg.output_dir == "artifacts");
  CHECK(cfg.workers == 2);
}

TEST_CASE("linspace endpoints are exact") {
  const std::vector<double> v = linspace(0.45, 0.95, 5);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 0.45);
  CHECK(v.back() == 0.95);
  CHECK(v[2] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(linspace(2.0, 9.0, 1) == std::vector<double>{2.0});
  CHECK_THROWS_AS(linspace(0.0, 1.0, 0), ConfigError);
}

TEST_CASE("config loader reports file problems") {
  CHECK_THROWS_AS(load_config(scratch("nope.json")), ConfigError);
  write_text_file(scratch("broken.json"), "{not json");
  CHECK_THROWS_AS(load_config(scratch("broken.json")), ConfigError);
  write_text_file(scratch("ok.json"), R"({"domain": {"n": 32}})");
  CHECK(load_config(scratch("ok.json")).n == 32);
}
