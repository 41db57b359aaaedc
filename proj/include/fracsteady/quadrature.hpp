#pragma once

#include <functional>
#include <vector>

namespace fracsteady {

// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  // Integral of f over [a, b] with this rule.
  double integrate(const std::function<double(double)>& f, double a, double b) const;
};

// Cached Gauss-Legendre rule; nodes found by Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

// Rule order used throughout kernel-moment and oracle quadrature.
inline constexpr int kPanelPoints = 24;

}  // namespace fracsteady
