#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracsteady/mesh.hpp"

namespace fracsteady {

// One swept model parameter ("lambda", "K", "c" or "eps") with its grid.
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

// Tolerance knobs; defaults match the library-wide constants.
struct Tolerances {
  double tol_solve = 1e-10;        // nonlinear iteration stopping tolerance
  double residual_factor = 1e-8;   // sub/supersolution sign-check factor
  double symmetry = 1e-12;         // operator symmetry (relative)
  double linear_residual = 1e-10;  // linear solve residual (relative)
};

// Full run description parsed from one JSON file; every field has a default
// so an empty config {} is a valid run.
struct RunConfig {
  Interval interval{};
  int n = 256;
  double s = 0.5;
  std::optional<double> lambda;               // absolute lambda
  std::optional<double> lambda_over_lambda1;  // lambda as a multiple of lambda1
  double K = 0.68;
  double c = 1.0;
  double eps = 0.002;
  ProfileKind profile = ProfileKind::Sine;
  Tolerances tol;
  SweepAxis sweep1{"K", {}};    // defaults filled by default_config()
  SweepAxis sweep2{"eps", {}};
  std::string output_dir = "out";
  int workers = 4;

  // Resolves the absolute lambda once lambda1 is known (default: 2 lambda1).
  double resolve_lambda(double lambda1) const;
};

// The built-in defaults, including the default K x eps sweep window.
RunConfig default_config();

// Parses a config object; throws ConfigError on malformed or out-of-range input.
RunConfig parse_config(const nlohmann::json& j);

// Loads and parses a JSON config file; throws ConfigError / IoError.
RunConfig load_config(const std::string& path);

// count evenly spaced values from lo to hi inclusive (count >= 1).
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace fracsteady
