#pragma once

#include <functional>

#include "fracsteady/model.hpp"

namespace fracsteady {

enum class Branch { Minimal, Maximal, Newton };

struct SolveOptions {
  double tol_solve = 1e-10;    // step / residual tolerance (scaled by 1 + ||u||)
  int max_iter_monotone = 5000;
  int max_iter_newton = 100;
};

struct SolveReport {
  GridFunction solution;
  int iterations = 0;
  double final_residual = 0.0;     // ||A u - lambda h f(u)||_inf at exit
  bool ordered = true;             // lower <= u <= upper nodewise (monotone branches)
  double monotone_violation = 0.0; // largest step against the branch direction
  Branch branch = Branch::Minimal;
  bool converged = false;
  bool singular_jacobian = false;  // Newton only: linear solve lost accuracy
};

// Shifted monotone iteration (A + M h I) u_{k+1} = h (lambda f(u_k) + M u_k)
// between an ordered sub/supersolution pair; M = lambda max(1, sup |f'|) over
// [0, max upper]. branch selects the start: Minimal ascends from lower,
// Maximal descends from upper.
SolveReport monotone_solve(const GridFunction& lower, const GridFunction& upper,
                           const ModelParams& p, const OperatorMatrix& A, Branch branch,
                           const SolveOptions& opts = {});

// Damped Newton on F(u) = A u - lambda h f(u) with halving line search.
// on_iterate, when set, observes every accepted iterate (used by the
// nonexistence probe to test the certificate along the trajectory).
SolveReport newton_solve(const GridFunction& u0, const ModelParams& p, const OperatorMatrix& A,
                         const SolveOptions& opts = {},
                         const std::function<void(const GridFunction&)>& on_iterate = {});

// Discrete weak form v^T A u - lambda h sum_i f(u)_i v_i.
double weak_residual(const GridFunction& u, const GridFunction& v, const ModelParams& p,
                     const OperatorMatrix& A);

// ||A u - lambda h f(u)||_inf.
double nonlinear_residual(const GridFunction& u, const ModelParams& p, const OperatorMatrix& A);

}  // namespace fracsteady
