#include "fracsteady/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace fracsteady {

EigenPair principal_eigenpair(const OperatorMatrix& A) {
  const GridPtr& grid = A.grid();
  const int n = grid->n();
  const double h = grid->h_step();
  GridFunction y(grid, Eigen::VectorXd::Ones(n));
  double rho_old = 0.0;
  constexpr int kMaxIterations = 10000;
  for (int it = 1; it <= kMaxIterations; ++it) {
    GridFunction z = A.solve_linear(y);
    // Sup-normalize with a positive leading component.
    int arg = 0;
    z.values.cwiseAbs().maxCoeff(&arg);
    y = GridFunction(grid, z.values / z.values[arg]);
    const Eigen::VectorXd Ay = A.entries() * y.values;
    const double rho = y.values.dot(Ay) / (h * y.values.squaredNorm());
    const double residual = (Ay - rho * h * y.values).cwiseAbs().maxCoeff();
    if (std::abs(rho - rho_old) < 1e-12 * std::abs(rho) && residual <= 1e-10) {
      EigenPair pair;
      pair.lambda1 = rho;
      pair.phi1 = y;
      pair.residual = residual;
      pair.iterations = it;
      return pair;
    }
    rho_old = rho;
  }
  throw EigensolverFailureError("principal_eigenpair: no convergence within 10000 iterations");
}

double rayleigh_quotient(const OperatorMatrix& A, const GridFunction& v) {
  if (v.grid != A.grid()) throw InvalidArgumentError("rayleigh_quotient: grid mismatch");
  const double vv = v.values.squaredNorm();
  if (!(vv > 0.0)) throw InvalidArgumentError("rayleigh_quotient: zero vector");
  return v.values.dot(A.entries() * v.values) / (A.grid()->h_step() * vv);
}

GridFunction torsion_function(const OperatorMatrix& A) {
  const GridPtr& grid = A.grid();
  const double h = grid->h_step();
  return A.solve_linear(GridFunction(grid, Eigen::VectorXd::Constant(grid->n(), h)));
}

double torsion_amplitude(FracOrder order) {
  const double s = order.s;
  return std::tgamma(0.5) / (std::pow(4.0, s) * std::tgamma(0.5 + s) * std::tgamma(1.0 + s));
}

GridFunction torsion_reference(const GridPtr& grid, FracOrder order) {
  const double s = order.s;
  const double r = 0.5 * grid->interval().length();
  const double amp = torsion_amplitude(order) * std::pow(r, 2.0 * s);
  Eigen::VectorXd v(grid->n());
  for (int i = 0; i < grid->n(); ++i) {
    const double xi = (grid->node(i) - grid->interval().center()) / r;
    v[i] = amp * std::pow(1.0 - xi * xi, s);
  }
  return GridFunction(grid, std::move(v));
}

namespace {

BoundaryFit fit_over(const GridFunction& u, FracOrder order, int layer_nodes) {
  const int n = u.size();
  const GridFunction dist = boundary_distance(u.grid);
  BoundaryFit fit;
  fit.exponent_used = order.s;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    const bool in_layer = layer_nodes <= 0 || i < layer_nodes || i >= n - layer_nodes;
    if (!in_layer) continue;
    if (!(u.values[i] > 0.0)) {
      throw InvalidArgumentError("boundary_fit: function must be strictly positive inside");
    }
    const double ratio = u.values[i] / std::pow(dist.values[i], order.s);
    if (first) {
      fit.lower_c = fit.upper_c = ratio;
      first = false;
    } else {
      fit.lower_c = std::min(fit.lower_c, ratio);
      fit.upper_c = std::max(fit.upper_c, ratio);
    }
  }
  return fit;
}

}  // namespace

BoundaryFit boundary_fit(const GridFunction& u, FracOrder order) { return fit_over(u, order, 0); }

BoundaryFit boundary_fit_layer(const GridFunction& u, FracOrder order, double fraction) {
  if (!(fraction > 0.0) || !(fraction <= 1.0)) {
    throw InvalidArgumentError("boundary_fit_layer: fraction must lie in (0, 1]");
  }
  const int layer = std::max(1, static_cast<int>(fraction * u.size()));
  return fit_over(u, order, layer);
}

}  // namespace fracsteady
