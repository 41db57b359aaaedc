#include "fracsteady/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracsteady {

ModelParams::ModelParams(double lambda_, double K_, double c_, double eps_, FracOrder s_,
                         GridFunction h_)
    : lambda(lambda_), K(K_), c(c_), eps(eps_), s(s_), h(std::move(h_)) {
  if (!(lambda > 0.0)) throw InvalidArgumentError("ModelParams: lambda must be positive");
  if (!(K > 0.0)) throw InvalidArgumentError("ModelParams: K must be positive");
  if (!(c >= 0.0)) throw InvalidArgumentError("ModelParams: c must be nonnegative");
  if (!(eps >= 0.0)) throw InvalidArgumentError("ModelParams: eps must be nonnegative");
  if (!h.grid) throw InvalidArgumentError("ModelParams: harvesting profile has no grid");
}

GridFunction reaction(const GridFunction& u, const ModelParams& p) {
  require_same_grid(u, p.h, "reaction");
  Eigen::VectorXd f(u.size());
  for (int i = 0; i < u.size(); ++i) {
    const double ui = u.values[i];
    f[i] = ui - ui * ui / p.K - p.c * ui * ui / (1.0 + ui * ui) - p.eps * p.h.values[i];
  }
  return GridFunction(u.grid, std::move(f));
}

GridFunction reaction_derivative(const GridFunction& u, const ModelParams& p) {
  require_same_grid(u, p.h, "reaction_derivative");
  Eigen::VectorXd df(u.size());
  for (int i = 0; i < u.size(); ++i) {
    const double ui = u.values[i];
    const double denom = 1.0 + ui * ui;
    df[i] = 1.0 - 2.0 * ui / p.K - 2.0 * p.c * ui / (denom * denom);
  }
  return GridFunction(u.grid, std::move(df));
}

ThresholdSet thresholds(const ModelParams& p, const EigenPair& eig, const GridFunction& e) {
  require_same_grid(eig.phi1, e, "thresholds");
  require_same_grid(eig.phi1, p.h, "thresholds");
  if (!(p.lambda > eig.lambda1)) {
    throw TheoremHypothesisError("thresholds: existence theorem requires lambda > lambda1");
  }
  ThresholdSet t;
  t.lambda1 = eig.lambda1;
  t.alpha = std::sqrt(eig.lambda1 / p.lambda);
  // theta = (1-alpha)/2 * min_i phi1/e keeps the gap phi1 - theta e above
  // alpha phi1 with a factor-2 safety margin.
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < e.size(); ++i) {
    if (!(e.values[i] > 0.0)) throw InvalidArgumentError("thresholds: torsion function must be positive");
    min_ratio = std::min(min_ratio, eig.phi1.values[i] / e.values[i]);
  }
  t.theta = 0.5 * (1.0 - t.alpha) * min_ratio;
  const Eigen::VectorXd gap = eig.phi1.values - t.theta * e.values;
  if (!((gap - t.alpha * eig.phi1.values).minCoeff() > 0.0)) {
    throw DegenerateGapError("thresholds: gap function failed to dominate alpha phi1");
  }
  t.m_lambda = (1.0 - t.alpha) / (2.0 * gap.cwiseAbs().maxCoeff());
  const double half = 0.5 * (1.0 - t.alpha);
  t.eta = 1.0 + half * half;
  t.sigma_upper = (p.c > 0.0) ? t.eta / p.c : std::numeric_limits<double>::infinity();
  t.sigma_lower = t.eta / (2.0 * t.eta + p.c);
  t.eps_star = t.theta * t.m_lambda / p.lambda;
  // Supersolution amplitude: at least lambda K/4, and large enough that
  // A_super e dominates the subsolution nodewise.
  double ordering = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    ordering = std::max(ordering, t.m_lambda * gap[i] / e.values[i]);
  }
  t.A_super = std::max(p.lambda * p.K / 4.0, ordering);
  return t;
}

GridFunction build_supersolution(const ThresholdSet& t, const GridFunction& e) {
  return GridFunction(e.grid, t.A_super * e.values);
}

GridFunction build_subsolution(const ThresholdSet& t, const EigenPair& eig, const GridFunction& e) {
  require_same_grid(eig.phi1, e, "build_subsolution");
  return GridFunction(e.grid, t.m_lambda * (eig.phi1.values - t.theta * e.values));
}

ResidualReport check_subsupersolution(const GridFunction& u, const ModelParams& p,
                                      const OperatorMatrix& A, PairKind kind, double tol_factor) {
  require_same_grid(u, p.h, "check_subsupersolution");
  if (u.grid != A.grid()) throw InvalidArgumentError("check_subsupersolution: grid mismatch");
  const Eigen::VectorXd Au = A.entries() * u.values;
  const Eigen::VectorXd r = Au - p.lambda * u.grid->h_step() * reaction(u, p).values;
  ResidualReport report;
  report.kind = kind;
  report.min_residual = r.minCoeff();
  report.max_residual = r.maxCoeff();
  report.tol = tol_factor * (1.0 + Au.cwiseAbs().maxCoeff());
  report.pass = (kind == PairKind::Subsolution) ? (report.max_residual <= report.tol)
                                                : (report.min_residual >= -report.tol);
  return report;
}

CertificateReport nonexistence_certificate(const GridFunction& u, const ModelParams& p,
                                           const EigenPair& eig) {
  require_same_grid(u, p.h, "nonexistence_certificate");
  if (u.values.minCoeff() < 0.0) {
    throw InvalidArgumentError("nonexistence_certificate: candidate must be nonnegative");
  }
  if (!(u.values.maxCoeff() > 0.0)) {
    throw InvalidArgumentError("nonexistence_certificate: candidate must be nonzero");
  }
  const double h = u.grid->h_step();
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double ui = u.values[i];
    lhs += ui * ui;
    rhs += (ui * ui / p.K + p.c * ui * ui / (1.0 + ui * ui) + p.eps * p.h.values[i]) * ui;
  }
  CertificateReport report;
  report.lhs = (p.lambda - eig.lambda1) * h * lhs;
  report.rhs = h * rhs;
  // Relative tolerance: the certificate must stay decisive for arbitrarily
  // small positive candidates (both sides shrink together).
  report.tol = 1e-12 * std::max(std::abs(report.lhs), std::abs(report.rhs));
  report.violated = report.lhs < report.rhs - report.tol;
  return report;
}

bool theorem_predicts(const ThresholdSet& t, const ModelParams& p) {
  return p.lambda > t.lambda1 && p.K > t.sigma_lower && p.K < t.sigma_upper && p.eps > 0.0 &&
         p.eps < t.eps_star;
}

}  // namespace fracsteady
