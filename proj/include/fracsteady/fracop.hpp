#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <string>
#include <vector>

#include "fracsteady/mesh.hpp"

namespace fracsteady {

// Fractional order s of (-Delta)^s; strictly inside (0, 1).
struct FracOrder {
  double s;

  explicit FracOrder(double order) : s(order) {
    if (!(s > 0.0) || !(s < 1.0)) {
      throw InvalidArgumentError("FracOrder: s must lie strictly in (0, 1)");
    }
  }
};

enum class Execution { Serial, Parallel };

// How many first/last rows receive the singularity-adapted diagonal
// correction (rows annihilate the one-sided edge profile (x-a)_+^s there).
inline constexpr int kBoundaryCorrectionDepth = 4;

// Minimum kernel-weight table length; the boundary-defect series is summed
// this far before switching to its analytic tail.
inline constexpr int kMinWeightCount = 4096;

// C(1,s) by numerical quadrature of the defining integral
// (int_R (1-cos t)/|t|^{1+2s} dt)^{-1}: Taylor series of 1-cos on [0,1],
// closed-form tail of |t|^{-1-2s} minus an oscillatory remainder obtained by
// integrating by parts until the integrand decays fast enough for panel
// quadrature. Only N = 1 is supported.
double normalization_constant(int dim, FracOrder s);

// Closed-form exterior load int_{R \ (a,b)} |x - y|^{-(1+2s)} dy for x inside.
double exterior_tail(const Interval& interval, double x, FracOrder s);

// Dimensionless kernel weights of the uniform-grid discretization:
//   c[0] = 1/(1-s) + 1/s        (regularized two-cell near field + far field)
//   c[1] = 1/(2-2s) + q,  q = int_0^1 (1-t)(1+t)^{-1-2s} dt
//   c[m] = int_{-1}^{1} (1-|t|) (m+t)^{-1-2s} dt   for m >= 2
// Row i of the operator is scale*(c[0] u_i - sum_m c[m](u_{i-m}+u_{i+m}))
// with zero padding outside and scale = C(1,s) h^{1-2s} (an extra factor h
// folds the lumped test-function mass into the matrix).
std::vector<double> kernel_weights(int count, FracOrder s, Execution exec = Execution::Serial);

// Residual of uncorrected row i (1-based, counted from the boundary) applied
// to samples of v(x) = (x-a)_+^s, which the exact operator annihilates.
// weights must be a kernel_weights table of length >= kMinWeightCount.
double boundary_row_defect(int i, FracOrder s, const std::vector<double>& weights);

// Human-readable description of the quadrature underlying an assembly.
struct QuadratureSpec {
  std::string interior_rule;
  std::string tail_rule;
  int panel_points = 0;
  int boundary_rows = 0;
};

// Dense symmetric discretization of (-Delta)^s with exterior Dirichlet data,
// pre-scaled by the lumped mass h (eigenproblem reads A phi = lambda h phi).
class OperatorMatrix {
public:
  const GridPtr& grid() const { return grid_; }
  FracOrder order() const { return s_; }
  double c_ns() const { return c_ns_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  // Dimensionless weight table used by assembly (shared with the seminorm).
  const std::vector<double>& weights() const { return weights_; }
  // Diagonal boundary corrections, index 0 = first interior node.
  const std::vector<double>& boundary_deltas() const { return deltas_; }
  QuadratureSpec quadrature_spec() const;

  GridFunction apply(const GridFunction& u) const;
  // Factorize-once dense solve with iterative refinement to
  // ||A u - rhs||_inf <= 1e-10 ||rhs||_inf.
  GridFunction solve_linear(const GridFunction& rhs) const;

  friend OperatorMatrix assemble_operator(const GridPtr& grid, FracOrder s, Execution exec);

private:
  OperatorMatrix(GridPtr grid, FracOrder s) : grid_(std::move(grid)), s_(s) {}

  GridPtr grid_;
  FracOrder s_;
  double c_ns_ = 0.0;
  double scale_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> deltas_;
  Eigen::MatrixXd entries_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

// Assembles the operator; rows are independent, so Execution::Parallel
// distributes them over OpenMP threads with bit-identical results.
OperatorMatrix assemble_operator(const GridPtr& grid, FracOrder s,
                                 Execution exec = Execution::Parallel);

// Free-function form of OperatorMatrix::solve_linear.
GridFunction solve_linear(const OperatorMatrix& A, const GridFunction& rhs);

// Gagliardo seminorm of the zero-extended interpolant of u, evaluated with
// the assembly's shared kernel weights so that
// (C(1,s)/2) * seminorm^2 == u^T A u up to round-off.
double gagliardo_seminorm(const GridFunction& u, FracOrder s, Execution exec = Execution::Serial);

}  // namespace fracsteady
