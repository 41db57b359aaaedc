#pragma once

#include <limits>
#include <string>
#include <vector>

#include "fracsteady/config.hpp"
#include "fracsteady/fracop.hpp"
#include "fracsteady/mesh.hpp"
#include "fracsteady/spectral.hpp"

namespace fracsteady {

// Outcome of one parameter cell: what the existence window claims and what the
// monotone solver actually produced. Residual is NaN when no solve ran.
struct MapCell {
  bool theorem_predicts = false;
  bool solver_found = false;
  double residual = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
};

// Existence map over two swept parameters; cells are keyed by (i,j) indices,
// row-major with axis2 fastest, independent of evaluation order.
struct ExistenceMap {
  SweepAxis axis1;
  SweepAxis axis2;
  std::vector<MapCell> cells;

  const MapCell& at(int i, int j) const { return cells[i * axis2.values.size() + j]; }
  MapCell& at(int i, int j) { return cells[i * axis2.values.size() + j]; }
};

// Runs the full sweep: one operator/eigenpair for all cells, then independent
// per-cell solves distributed over cfg.workers threads.
ExistenceMap run_sweep(const RunConfig& cfg, const OperatorMatrix& A, const EigenPair& eig,
                       const GridFunction& torsion, const GridFunction& profile);

// CSV with header param1,param2,theorem_predicts,solver_found,residual,iterations.
void write_map_csv(const ExistenceMap& map, const std::string& path);

// Two-color heat map (solver_found yes/no); predicted cells get a marker dot.
// Throws InvalidArgumentError on an empty map.
void svg_heat_map(const ExistenceMap& map, const std::string& path);

}  // namespace fracsteady
