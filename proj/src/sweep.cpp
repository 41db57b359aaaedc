#include "fracsteady/sweep.hpp"

#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracsteady/errors.hpp"
#include "fracsteady/io.hpp"
#include "fracsteady/model.hpp"
#include "fracsteady/solver.hpp"

namespace fracsteady {
namespace {

// Applies one swept value onto the base parameter set.
void apply_axis(const std::string& name, double value, double& lambda, double& K, double& c,
                double& eps) {
  if (name == "lambda") {
    lambda = value;
  } else if (name == "K") {
    K = value;
  } else if (name == "c") {
    c = value;
  } else if (name == "eps") {
    eps = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + name + "'");
  }
}

MapCell evaluate_cell(double v1, double v2, const RunConfig& cfg, const OperatorMatrix& A,
                      const EigenPair& eig, const GridFunction& torsion,
                      const GridFunction& profile) {
  MapCell cell;
  double lambda = cfg.resolve_lambda(eig.lambda1);
  double K = cfg.K;
  double c = cfg.c;
  double eps = cfg.eps;
  apply_axis(cfg.sweep1.name, v1, lambda, K, c, eps);
  apply_axis(cfg.sweep2.name, v2, lambda, K, c, eps);
  try {
    const ModelParams p(lambda, K, c, eps, FracOrder(cfg.s), profile);
    const ThresholdSet t = thresholds(p, eig, torsion);
    cell.theorem_predicts = theorem_predicts(t, p);
    const GridFunction lower = build_subsolution(t, eig, torsion);
    const GridFunction upper = build_supersolution(t, torsion);
    SolveOptions opts;
    opts.tol_solve = cfg.tol.tol_solve;
    const SolveReport rep = monotone_solve(lower, upper, p, A, Branch::Minimal, opts);
    cell.iterations = rep.iterations;
    cell.residual = nonlinear_residual(rep.solution, p, A);
    cell.solver_found =
        rep.converged && rep.ordered && rep.solution.values.minCoeff() > 0.0;
  } catch (const Error&) {
    // Hypothesis violated, unordered pair, or no convergence: the cell is an
    // observation with solver_found = false; prediction stays as computed.
  }
  return cell;
}

}  // namespace

ExistenceMap run_sweep(const RunConfig& cfg, const OperatorMatrix& A, const EigenPair& eig,
                       const GridFunction& torsion, const GridFunction& profile) {
  if (cfg.sweep1.values.empty() || cfg.sweep2.values.empty()) {
    throw ConfigError("sweep axes must be non-empty");
  }
  ExistenceMap map;
  map.axis1 = cfg.sweep1;
  map.axis2 = cfg.sweep2;
  const int n1 = static_cast<int>(cfg.sweep1.values.size());
  const int n2 = static_cast<int>(cfg.sweep2.values.size());
  map.cells.resize(static_cast<size_t>(n1) * n2);

#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic) num_threads(cfg.workers)
#endif
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      map.at(i, j) =
          evaluate_cell(cfg.sweep1.values[i], cfg.sweep2.values[j], cfg, A, eig, torsion, profile);
    }
  }
  return map;
}

void write_map_csv(const ExistenceMap& map, const std::string& path) {
  std::ostringstream os;
  os << "param1,param2,theorem_predicts,solver_found,residual,iterations\n";
  for (size_t i = 0; i < map.axis1.values.size(); ++i) {
    for (size_t j = 0; j < map.axis2.values.size(); ++j) {
      const MapCell& cell = map.at(static_cast<int>(i), static_cast<int>(j));
      os << format_full(map.axis1.values[i]) << ',' << format_full(map.axis2.values[j]) << ','
         << (cell.theorem_predicts ? "true" : "false") << ','
         << (cell.solver_found ? "true" : "false") << ','
         << (std::isnan(cell.residual) ? std::string("nan") : format_full(cell.residual)) << ','
         << cell.iterations << '\n';
    }
  }
  write_text_file(path, os.str());
}

void svg_heat_map(const ExistenceMap& map, const std::string& path) {
  const int n1 = static_cast<int>(map.axis1.values.size());
  const int n2 = static_cast<int>(map.axis2.values.size());
  if (n1 == 0 || n2 == 0 || map.cells.empty()) {
    throw InvalidArgumentError("svg_heat_map: empty existence map");
  }
  const double cell_w = 60.0, cell_h = 40.0;
  const double left = 90.0, top = 40.0;
  const double width = left + n2 * cell_w + 40.0;
  const double height = top + n1 * cell_h + 70.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_svg(width)
     << "\" height=\"" << format_svg(height) << "\" viewBox=\"0 0 " << format_svg(width) << ' '
     << format_svg(height) << "\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << format_svg(width) << "\" height=\""
     << format_svg(height) << "\" fill=\"white\"/>\n";
  // axis1 runs down rows, axis2 across columns.
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const MapCell& cell = map.at(i, j);
      const double x = left + j * cell_w;
      const double y = top + i * cell_h;
      const char* fill = cell.solver_found ? "#2ca02c" : "#d3d3d3";
      os << "  <rect x=\"" << format_svg(x) << "\" y=\"" << format_svg(y) << "\" width=\""
         << format_svg(cell_w) << "\" height=\"" << format_svg(cell_h) << "\" fill=\"" << fill
         << "\" stroke=\"white\"/>\n";
      if (cell.theorem_predicts) {
        os << "  <circle cx=\"" << format_svg(x + cell_w / 2) << "\" cy=\""
           << format_svg(y + cell_h / 2) << "\" r=\"4\" fill=\"black\"/>\n";
      }
    }
  }
  // Row labels (axis1 values) and column labels (axis2 values).
  for (int i = 0; i < n1; ++i) {
    os << "  <text x=\"" << format_svg(left - 8.0) << "\" y=\""
       << format_svg(top + i * cell_h + cell_h / 2 + 4.0)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
       << format_svg(map.axis1.values[i]) << "</text>\n";
  }
  for (int j = 0; j < n2; ++j) {
    os << "  <text x=\"" << format_svg(left + j * cell_w + cell_w / 2) << "\" y=\""
       << format_svg(top + n1 * cell_h + 16.0)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
       << format_svg(map.axis2.values[j]) << "</text>\n";
  }
  os << "  <text x=\"16\" y=\"" << format_svg(top + n1 * cell_h / 2.0)
     << "\" font-family=\"sans-serif\" font-size=\"12\">" << map.axis1.name << "</text>\n";
  os << "  <text x=\"" << format_svg(left + n2 * cell_w / 2.0) << "\" y=\""
     << format_svg(top + n1 * cell_h + 36.0)
     << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << map.axis2.name
     << "</text>\n";
  // Legend: filled = solver found a positive ordered solution; dot = predicted.
  const double ly = top + n1 * cell_h + 54.0;
  os << "  <rect x=\"" << format_svg(left) << "\" y=\"" << format_svg(ly - 10.0)
     << "\" width=\"14\" height=\"12\" fill=\"#2ca02c\"/>\n";
  os << "  <text x=\"" << format_svg(left + 20.0) << "\" y=\"" << format_svg(ly)
     << "\" font-family=\"sans-serif\" font-size=\"11\">solution found</text>\n";
  os << "  <circle cx=\"" << format_svg(left + 130.0) << "\" cy=\"" << format_svg(ly - 4.0)
     << "\" r=\"4\" fill=\"black\"/>\n";
  os << "  <text x=\"" << format_svg(left + 140.0) << "\" y=\"" << format_svg(ly)
     << "\" font-family=\"sans-serif\" font-size=\"11\">existence window</text>\n";
  os << "</svg>\n";
  write_text_file(path, os.str());
}

}  // namespace fracsteady
