#include "fracsteady/solver.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

namespace fracsteady {

namespace {

double scalar_reaction_derivative(double t, const ModelParams& p) {
  const double denom = 1.0 + t * t;
  return 1.0 - 2.0 * t / p.K - 2.0 * p.c * t / (denom * denom);
}

// Shift making t -> lambda f(t) + M t nondecreasing on [0, top].
double monotone_shift(double top, const ModelParams& p) {
  double sup = 0.0;
  constexpr int kSamples = 4096;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = top * k / kSamples;
    sup = std::max(sup, std::abs(scalar_reaction_derivative(t, p)));
  }
  return p.lambda * std::max(1.0, sup);
}

Eigen::VectorXd residual_vector(const Eigen::VectorXd& u, const ModelParams& p,
                                const OperatorMatrix& A) {
  const GridFunction uf(A.grid(), u);
  return A.entries() * u - p.lambda * A.grid()->h_step() * reaction(uf, p).values;
}

}  // namespace

SolveReport monotone_solve(const GridFunction& lower, const GridFunction& upper,
                           const ModelParams& p, const OperatorMatrix& A, Branch branch,
                           const SolveOptions& opts) {
  require_same_grid(lower, upper, "monotone_solve");
  if (lower.grid != A.grid()) throw InvalidArgumentError("monotone_solve: grid mismatch");
  if (branch == Branch::Newton) {
    throw InvalidArgumentError("monotone_solve: branch must be Minimal or Maximal");
  }
  if ((upper.values - lower.values).minCoeff() < 0.0) {
    throw InvalidPairError("monotone_solve: lower exceeds upper somewhere");
  }
  const GridPtr& grid = A.grid();
  const double h = grid->h_step();
  const double M = monotone_shift(std::max(0.0, upper.values.maxCoeff()), p);
  Eigen::MatrixXd shifted = A.entries();
  shifted.diagonal().array() += M * h;
  const Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw SingularOperatorError("monotone_solve: shifted operator lost positive definiteness");
  }
  SolveReport report;
  report.branch = branch;
  Eigen::VectorXd u = (branch == Branch::Minimal) ? lower.values : upper.values;
  for (int it = 1; it <= opts.max_iter_monotone; ++it) {
    const GridFunction uf(grid, u);
    const Eigen::VectorXd rhs = h * (p.lambda * reaction(uf, p).values + M * u);
    const Eigen::VectorXd next = llt.solve(rhs);
    const double wrong_way = (branch == Branch::Minimal) ? (u - next).maxCoeff() : (next - u).maxCoeff();
    report.monotone_violation = std::max(report.monotone_violation, std::max(0.0, wrong_way));
    const double step = (next - u).cwiseAbs().maxCoeff();
    u = next;
    if (step <= opts.tol_solve * (1.0 + u.cwiseAbs().maxCoeff())) {
      report.iterations = it;
      report.converged = true;
      break;
    }
    report.iterations = it;
  }
  if (!report.converged) {
    throw NonConvergenceError("monotone_solve: no convergence within " +
                              std::to_string(opts.max_iter_monotone) + " iterations");
  }
  report.solution = GridFunction(grid, u);
  report.final_residual = residual_vector(u, p, A).cwiseAbs().maxCoeff();
  const double slack = 10.0 * opts.tol_solve * (1.0 + u.cwiseAbs().maxCoeff());
  report.ordered = ((u - lower.values).minCoeff() >= -slack) &&
                   ((upper.values - u).minCoeff() >= -slack);
  return report;
}

SolveReport newton_solve(const GridFunction& u0, const ModelParams& p, const OperatorMatrix& A,
                         const SolveOptions& opts,
                         const std::function<void(const GridFunction&)>& on_iterate) {
  if (u0.grid != A.grid()) throw InvalidArgumentError("newton_solve: grid mismatch");
  const GridPtr& grid = A.grid();
  const double h = grid->h_step();
  SolveReport report;
  report.branch = Branch::Newton;
  Eigen::VectorXd u = u0.values;
  Eigen::VectorXd F = residual_vector(u, p, A);
  double norm_F = F.cwiseAbs().maxCoeff();
  for (int it = 0; it <= opts.max_iter_newton; ++it) {
    if (norm_F <= opts.tol_solve * (1.0 + u.cwiseAbs().maxCoeff())) {
      report.converged = true;
      report.iterations = it;
      break;
    }
    if (it == opts.max_iter_newton) break;
    const GridFunction uf(grid, u);
    Eigen::MatrixXd J = A.entries();
    J.diagonal() -= p.lambda * h * reaction_derivative(uf, p).values;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    const Eigen::VectorXd d = lu.solve(-F);
    // A rank-deficient Jacobian shows up as a bad linear residual.
    if ((J * d + F).cwiseAbs().maxCoeff() > 1e-8 * norm_F) {
      report.singular_jacobian = true;
    }
    // Halving line search on ||F||_inf with a small sufficient-decrease margin.
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      const Eigen::VectorXd trial = u + t * d;
      const Eigen::VectorXd F_trial = residual_vector(trial, p, A);
      const double norm_trial = F_trial.cwiseAbs().maxCoeff();
      if (norm_trial <= (1.0 - 1e-4 * t) * norm_F) {
        u = trial;
        F = F_trial;
        norm_F = norm_trial;
        accepted = true;
        if (on_iterate) on_iterate(GridFunction(grid, u));
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      throw NonConvergenceError("newton_solve: line search stalled");
    }
  }
  if (!report.converged) {
    throw NonConvergenceError("newton_solve: no convergence within " +
                              std::to_string(opts.max_iter_newton) + " iterations");
  }
  report.solution = GridFunction(grid, u);
  report.final_residual = norm_F;
  return report;
}

double weak_residual(const GridFunction& u, const GridFunction& v, const ModelParams& p,
                     const OperatorMatrix& A) {
  require_same_grid(u, v, "weak_residual");
  if (u.grid != A.grid()) throw InvalidArgumentError("weak_residual: grid mismatch");
  const double h = u.grid->h_step();
  return v.values.dot(A.entries() * u.values) -
         p.lambda * h * reaction(u, p).values.dot(v.values);
}

double nonlinear_residual(const GridFunction& u, const ModelParams& p, const OperatorMatrix& A) {
  if (u.grid != A.grid()) throw InvalidArgumentError("nonlinear_residual: grid mismatch");
  return residual_vector(u.values, p, A).cwiseAbs().maxCoeff();
}

}  // namespace fracsteady
