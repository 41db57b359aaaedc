#include "fracsteady/config.hpp"

#include <fstream>
#include <set>

#include "fracsteady/errors.hpp"

namespace fracsteady {

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw ConfigError("linspace needs count >= 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

double RunConfig::resolve_lambda(double lambda1) const {
  if (lambda && lambda_over_lambda1) {
    throw ConfigError("config sets both lambda and lambda_over_lambda1; pick one");
  }
  if (lambda) return *lambda;
  if (lambda_over_lambda1) return *lambda_over_lambda1 * lambda1;
  return 2.0 * lambda1;
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.sweep1 = SweepAxis{"K", linspace(0.45, 0.95, 5)};
  cfg.sweep2 = SweepAxis{"eps", linspace(0.0005, 0.003, 5)};
  return cfg;
}

namespace {

const std::set<std::string> kSweepNames = {"lambda", "K", "c", "eps"};

double require_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

int require_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + " must be an integer");
  return j.get<int>();
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                    const std::string& section) {
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + section);
    }
  }
}

SweepAxis parse_axis(const nlohmann::json& j, const std::string& section) {
  if (!j.is_object()) throw ConfigError(section + " must be an object");
  reject_unknown(j, {"name", "values", "linspace"}, section);
  if (!j.contains("name") || !j["name"].is_string()) {
    throw ConfigError(section + " needs a string 'name'");
  }
  SweepAxis axis;
  axis.name = j["name"].get<std::string>();
  if (!kSweepNames.count(axis.name)) {
    throw ConfigError(section + ": unknown sweep parameter '" + axis.name + "'");
  }
  const bool has_values = j.contains("values");
  const bool has_linspace = j.contains("linspace");
  if (has_values == has_linspace) {
    throw ConfigError(section + " needs exactly one of 'values' or 'linspace'");
  }
  if (has_values) {
    if (!j["values"].is_array() || j["values"].empty()) {
      throw ConfigError(section + ".values must be a non-empty array");
    }
    for (const auto& v : j["values"]) axis.values.push_back(require_number(v, section + ".values"));
  } else {
    const auto& ls = j["linspace"];
    if (!ls.is_array() || ls.size() != 3) {
      throw ConfigError(section + ".linspace must be [lo, hi, count]");
    }
    const double lo = require_number(ls[0], section + ".linspace[0]");
    const double hi = require_number(ls[1], section + ".linspace[1]");
    const int count = require_int(ls[2], section + ".linspace[2]");
    if (count < 1) throw ConfigError(section + ".linspace count must be >= 1");
    axis.values = linspace(lo, hi, count);
  }
  return axis;
}

ProfileKind parse_profile(const std::string& name) {
  if (name == "sine") return ProfileKind::Sine;
  if (name == "bump") return ProfileKind::Bump;
  throw ConfigError("unknown profile '" + name + "' (expected sine or bump)");
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(j, {"domain", "operator", "model", "tolerances", "sweep", "output"}, "config");
  RunConfig cfg = default_config();

  if (j.contains("domain")) {
    const auto& d = j["domain"];
    reject_unknown(d, {"a", "b", "n"}, "domain");
    if (d.contains("a")) cfg.interval.a = require_number(d["a"], "domain.a");
    if (d.contains("b")) cfg.interval.b = require_number(d["b"], "domain.b");
    if (d.contains("n")) cfg.n = require_int(d["n"], "domain.n");
    if (!(cfg.interval.a < cfg.interval.b)) throw ConfigError("domain: need a < b");
    if (cfg.n < 2) throw ConfigError("domain.n must be >= 2");
  }
  if (j.contains("operator")) {
    const auto& o = j["operator"];
    reject_unknown(o, {"s"}, "operator");
    if (o.contains("s")) cfg.s = require_number(o["s"], "operator.s");
    if (!(cfg.s > 0.0 && cfg.s < 1.0)) throw ConfigError("operator.s must lie in (0,1)");
  }
  if (j.contains("model")) {
    const auto& m = j["model"];
    reject_unknown(m, {"lambda", "lambda_over_lambda1", "K", "c", "eps", "profile"}, "model");
    if (m.contains("lambda")) cfg.lambda = require_number(m["lambda"], "model.lambda");
    if (m.contains("lambda_over_lambda1")) {
      cfg.lambda_over_lambda1 = require_number(m["lambda_over_lambda1"], "model.lambda_over_lambda1");
    }
    if (cfg.lambda && cfg.lambda_over_lambda1) {
      throw ConfigError("config sets both lambda and lambda_over_lambda1; pick one");
    }
    if (m.contains("K")) cfg.K = require_number(m["K"], "model.K");
    if (m.contains("c")) cfg.c = require_number(m["c"], "model.c");
    if (m.contains("eps")) cfg.eps = require_number(m["eps"], "model.eps");
    if (m.contains("profile")) {
      if (!m["profile"].is_string()) throw ConfigError("model.profile must be a string");
      cfg.profile = parse_profile(m["profile"].get<std::string>());
    }
    if (cfg.lambda && *cfg.lambda <= 0.0) throw ConfigError("model.lambda must be positive");
    if (cfg.lambda_over_lambda1 && *cfg.lambda_over_lambda1 <= 0.0) {
      throw ConfigError("model.lambda_over_lambda1 must be positive");
    }
    if (cfg.K <= 0.0) throw ConfigError("model.K must be positive");
    if (cfg.c < 0.0) throw ConfigError("model.c must be nonnegative");
    if (cfg.eps < 0.0) throw ConfigError("model.eps must be nonnegative");
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    reject_unknown(t, {"tol_solve", "residual_factor", "symmetry", "linear_residual"},
                   "tolerances");
    if (t.contains("tol_solve")) cfg.tol.tol_solve = require_number(t["tol_solve"], "tolerances.tol_solve");
    if (t.contains("residual_factor")) {
      cfg.tol.residual_factor = require_number(t["residual_factor"], "tolerances.residual_factor");
    }
    if (t.contains("symmetry")) cfg.tol.symmetry = require_number(t["symmetry"], "tolerances.symmetry");
    if (t.contains("linear_residual")) {
      cfg.tol.linear_residual = require_number(t["linear_residual"], "tolerances.linear_residual");
    }
    if (cfg.tol.tol_solve <= 0.0 || cfg.tol.residual_factor <= 0.0 || cfg.tol.symmetry <= 0.0 ||
        cfg.tol.linear_residual <= 0.0) {
      throw ConfigError("tolerances must be positive");
    }
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    reject_unknown(s, {"param1", "param2"}, "sweep");
    if (s.contains("param1")) cfg.sweep1 = parse_axis(s["param1"], "sweep.param1");
    if (s.contains("param2")) cfg.sweep2 = parse_axis(s["param2"], "sweep.param2");
    if (cfg.sweep1.name == cfg.sweep2.name) {
      throw ConfigError("sweep axes must name two different parameters");
    }
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    reject_unknown(o, {"dir", "workers"}, "output");
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) throw ConfigError("output.dir must be a string");
      cfg.output_dir = o["dir"].get<std::string>();
    }
    if (o.contains("workers")) cfg.workers = require_int(o["workers"], "output.workers");
    if (cfg.workers < 1) throw ConfigError("output.workers must be >= 1");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace fracsteady
