#pragma once

// Independent numerical oracles used to validate the library's analytic
// constants and operator action. Each one works directly from a defining
// singular integral with its own decomposition (dyadic panels + analytic
// stubs + series acceleration), sharing no formulas with the production path.

namespace oracles {

// Normalization constant of the 1D operator from its defining integral:
// 1/C = integral over R of (1 - cos t) |t|^{-1-2s} dt.
double normalization_constant_direct(double s);

// Defining-identity check for the flat-torsion amplitude kappa(s): applies
// the operator to kappa (1-x^2)^s at x = 0 by direct quadrature and returns
// the value, which must equal 1.
double torsion_identity_value(double s);

// Operator applied to w(x) = (1-x^2)_+^4 at an interior point x: exact
// polynomial integration of the symmetric principal-value window, panel
// quadrature of the one-sided remainder, closed-form exterior tail.
double bump_apply_direct(double x, double s);

// The profile used by bump_apply_direct.
double bump_profile(double x);

}  // namespace oracles
