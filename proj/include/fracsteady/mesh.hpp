#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "fracsteady/errors.hpp"

namespace fracsteady {

// Computational domain Omega = (a, b).
struct Interval {
  double a = -1.0;
  double b = 1.0;

  double length() const { return b - a; }
  double center() const { return 0.5 * (a + b); }
};

// Uniform grid of n interior nodes x_i = a + i*h, h = (b-a)/(n+1).
// Grid functions carry interior values only; the function is zero at a, b
// and on all of R \ (a, b) (exterior Dirichlet convention).
class Grid {
public:
  Grid(Interval interval, int n);

  const Interval& interval() const { return interval_; }
  int n() const { return n_; }
  double h_step() const { return h_; }
  double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& nodes() const { return nodes_; }

private:
  Interval interval_;
  int n_;
  double h_;
  std::vector<double> nodes_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Interior nodal values of a function extended by zero outside Omega.
struct GridFunction {
  GridPtr grid;
  Eigen::VectorXd values;

  GridFunction() = default;
  GridFunction(GridPtr g, Eigen::VectorXd v);

  int size() const { return static_cast<int>(values.size()); }
  double sup_norm() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

// Requires grids to be the same object (all operations share one grid).
void require_same_grid(const GridFunction& u, const GridFunction& v, const char* where);

// Builds the uniform grid; n >= 2 and a < b.
GridPtr build_grid(Interval interval, int n);

// Distance to the nearest endpoint, min(x_i - a, b - x_i), at every node.
GridFunction boundary_distance(const GridPtr& grid);

enum class ProfileKind { Sine, Bump, Custom };

// Harvesting profile h >= 0 with max node value normalized to exactly 1.
//  - Sine: sin(pi (x-a)/(b-a))              (default in configs)
//  - Bump: exp(1 - 1/(1 - xi^2)), xi the interval-centered coordinate
//  - Custom: caller-supplied nonnegative nodal values, normalized by max
GridFunction harvesting_profile(const GridPtr& grid, ProfileKind kind,
                                const std::vector<double>& custom_values = {});

}  // namespace fracsteady
