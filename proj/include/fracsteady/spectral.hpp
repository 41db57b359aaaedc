#pragma once

#include "fracsteady/fracop.hpp"

namespace fracsteady {

// Principal eigenpair of A phi = lambda h phi (lumped mass).
struct EigenPair {
  double lambda1 = 0.0;
  GridFunction phi1;       // positive, sup-normalized to 1
  double residual = 0.0;   // ||A phi1 - lambda1 h phi1||_inf
  int iterations = 0;
};

// Fitted constants of the delta^s boundary-growth estimate.
struct BoundaryFit {
  double lower_c = 0.0;
  double upper_c = 0.0;
  double exponent_used = 0.0;
};

// Smallest eigenpair of (1/h) A by inverse power iteration from the
// constant-one vector; stops when successive Rayleigh quotients agree to
// 1e-12 relative and the residual is at most 1e-10.
EigenPair principal_eigenpair(const OperatorMatrix& A);

// (v^T A v) / (h v^T v); v must be nonzero.
double rayleigh_quotient(const OperatorMatrix& A, const GridFunction& v);

// Discrete solution of (-Delta)^s e = 1 with exterior zero data.
GridFunction torsion_function(const OperatorMatrix& A);

// Closed-form torsion amplitude for the unit ball (interval radius 1):
// kappa(s) = Gamma(1/2) / (4^s Gamma((1+2s)/2) Gamma(1+s)).
double torsion_amplitude(FracOrder s);

// kappa(s) r^{2s} (1 - xi^2)^s sampled on the grid, xi the radius-scaled
// coordinate; the exact torsion function of the interval.
GridFunction torsion_reference(const GridPtr& grid, FracOrder s);

// Ratio bounds of u against boundary_distance^s over all interior nodes.
BoundaryFit boundary_fit(const GridFunction& u, FracOrder s);

// Same fit restricted to the nearest ceil(fraction*n) nodes to each endpoint
// (reported for diagnostics, never asserted).
BoundaryFit boundary_fit_layer(const GridFunction& u, FracOrder s, double fraction = 0.1);

}  // namespace fracsteady
