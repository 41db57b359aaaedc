#include "fracsteady/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace fracsteady {

Grid::Grid(Interval interval, int n) : interval_(interval), n_(n) {
  if (!(interval.a < interval.b)) {
    throw InvalidDomainError("build_grid: interval endpoints must satisfy a < b");
  }
  if (n < 2) {
    throw InvalidDomainError("build_grid: need at least 2 interior nodes");
  }
  h_ = interval.length() / (n + 1);
  nodes_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes_[static_cast<std::size_t>(i)] = interval.a + (i + 1) * h_;
  }
}

GridFunction::GridFunction(GridPtr g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw InvalidArgumentError("GridFunction: null grid");
  if (values.size() != grid->n()) {
    throw InvalidArgumentError("GridFunction: value count does not match grid");
  }
}

void require_same_grid(const GridFunction& u, const GridFunction& v, const char* where) {
  if (!u.grid || !v.grid || u.grid != v.grid) {
    throw InvalidArgumentError(std::string(where) + ": arguments live on different grids");
  }
}

GridPtr build_grid(Interval interval, int n) { return std::make_shared<const Grid>(interval, n); }

GridFunction boundary_distance(const GridPtr& grid) {
  Eigen::VectorXd d(grid->n());
  for (int i = 0; i < grid->n(); ++i) {
    const double x = grid->node(i);
    d[i] = std::min(x - grid->interval().a, grid->interval().b - x);
  }
  return GridFunction(grid, std::move(d));
}

GridFunction harvesting_profile(const GridPtr& grid, ProfileKind kind,
                                const std::vector<double>& custom_values) {
  const int n = grid->n();
  Eigen::VectorXd v(n);
  switch (kind) {
    case ProfileKind::Sine:
      for (int i = 0; i < n; ++i) {
        const double t = (grid->node(i) - grid->interval().a) / grid->interval().length();
        v[i] = std::sin(M_PI * t);
      }
      break;
    case ProfileKind::Bump:
      for (int i = 0; i < n; ++i) {
        const double xi = (grid->node(i) - grid->interval().center()) / (0.5 * grid->interval().length());
        v[i] = std::exp(1.0 - 1.0 / (1.0 - xi * xi));
      }
      break;
    case ProfileKind::Custom:
      if (static_cast<int>(custom_values.size()) != n) {
        throw InvalidProfileError("harvesting_profile: custom value count does not match grid");
      }
      for (int i = 0; i < n; ++i) {
        if (custom_values[static_cast<std::size_t>(i)] < 0.0) {
          throw InvalidProfileError("harvesting_profile: custom profile has a negative entry");
        }
        v[i] = custom_values[static_cast<std::size_t>(i)];
      }
      break;
  }
  const double vmax = v.maxCoeff();
  if (!(vmax > 0.0)) {
    throw InvalidProfileError("harvesting_profile: profile is identically zero");
  }
  v /= vmax;
  return GridFunction(grid, std::move(v));
}

}  // namespace fracsteady
