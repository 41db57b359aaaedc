#pragma once

#include "fracsteady/spectral.hpp"

namespace fracsteady {

// Parameters of the steady logistic-grazing-harvesting model
//   (-Delta)^s u = lambda (u - u^2/K - c u^2/(1+u^2) - eps h(x)).
// c = 0 is admitted (pure logistic regime used by the branch-agreement and
// certificate checks); eps = 0 disables harvesting.
struct ModelParams {
  double lambda;
  double K;
  double c;
  double eps;
  FracOrder s;
  GridFunction h;

  ModelParams(double lambda_, double K_, double c_, double eps_, FracOrder s_, GridFunction h_);
};

// Nodewise reaction f(u) = u - u^2/K - c u^2/(1+u^2) - eps h (lambda applied
// by the caller).
GridFunction reaction(const GridFunction& u, const ModelParams& p);

// Nodewise f'(u) = 1 - 2u/K - 2 c u/(1+u^2)^2.
GridFunction reaction_derivative(const GridFunction& u, const ModelParams& p);

// Existence-theorem constants built from (lambda1, phi1) and the torsion
// function e. sigma_upper is +infinity when c = 0.
struct ThresholdSet {
  double lambda1 = 0.0;
  double alpha = 0.0;       // sqrt(lambda1/lambda)
  double theta = 0.0;       // (1-alpha)/2 * min_i phi1/e
  double eta = 0.0;         // 1 + ((1-alpha)/2)^2
  double m_lambda = 0.0;    // (1-alpha) / (2 ||phi1 - theta e||_inf)
  double sigma_upper = 0.0; // eta / c
  double sigma_lower = 0.0; // eta / (2 eta + c)
  double eps_star = 0.0;    // theta m_lambda / lambda
  double A_super = 0.0;     // max(lambda K / 4, nodewise ordering amplitude)
};

// Threshold constants; requires lambda > lambda1 (theorem hypothesis).
ThresholdSet thresholds(const ModelParams& p, const EigenPair& eig, const GridFunction& e);

// A_super * e.
GridFunction build_supersolution(const ThresholdSet& t, const GridFunction& e);

// m_lambda (phi1 - theta e); sup-norm (1-alpha)/2 by construction.
GridFunction build_subsolution(const ThresholdSet& t, const EigenPair& eig, const GridFunction& e);

enum class PairKind { Subsolution, Supersolution };

// Nodal residual r = A u - lambda h_step f(u) with sign verdict.
struct ResidualReport {
  double min_residual = 0.0;
  double max_residual = 0.0;
  double tol = 0.0;
  PairKind kind = PairKind::Subsolution;
  bool pass = false;
};

// Subsolution passes iff max_i r_i <= tol, supersolution iff min_i r_i >= -tol,
// with tol = tol_factor * (1 + ||A u||_inf).
ResidualReport check_subsupersolution(const GridFunction& u, const ModelParams& p,
                                      const OperatorMatrix& A, PairKind kind,
                                      double tol_factor = 1e-8);

// Energy-identity certificate: for a claimed positive steady state,
//   L = (lambda - lambda1) h sum u_i^2   must dominate
//   R = h sum (u_i^2/K + c u_i^2/(1+u_i^2) + eps h_i) u_i.
// violated = (L < R - tol) certifies that no positive solution exists at u;
// it must fire whenever lambda <= lambda1 and u > 0.
struct CertificateReport {
  bool violated = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
};

CertificateReport nonexistence_certificate(const GridFunction& u, const ModelParams& p,
                                           const EigenPair& eig);

// K in (sigma_lower, sigma_upper), eps in (0, eps_star), lambda > lambda1.
bool theorem_predicts(const ThresholdSet& t, const ModelParams& p);

}  // namespace fracsteady
