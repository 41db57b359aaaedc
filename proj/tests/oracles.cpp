#include "oracles.hpp"

#include <cmath>
#include <vector>

#include "fracsteady/fracop.hpp"
#include "fracsteady/quadrature.hpp"
#include "fracsteady/spectral.hpp"

namespace oracles {
namespace {

using fracsteady::gauss_legendre;

// Tail integral of cos(t) t^{-1-2s} over [1, inf): pi-length panels give an
// alternating partial-sum sequence, collapsed by iterated averaging.
double cosine_tail(double s) {
  const auto& rule = gauss_legendre(24);
  const double pi = 3.14159265358979323846;
  const int panels = 60;
  std::vector<double> partial(panels);
  double acc = 0.0;
  for (int m = 0; m < panels; ++m) {
    acc += rule.integrate([s](double t) { return std::cos(t) * std::pow(t, -1.0 - 2.0 * s); },
                          1.0 + m * pi, 1.0 + (m + 1) * pi);
    partial[m] = acc;
  }
  for (int round = 0; round < 20; ++round) {
    for (int i = 0; i + 1 < panels - round; ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
  }
  return partial[0];
}

}  // namespace

double normalization_constant_direct(double s) {
  const auto& rule = gauss_legendre(24);
  // Near part on [eps, 1] with 1 - cos t written as 2 sin^2(t/2); dyadic
  // panels toward the singularity.
  const int levels = 40;
  double near = 0.0;
  for (int k = 0; k < levels; ++k) {
    const double hi = std::ldexp(1.0, -k);
    near += rule.integrate(
        [s](double t) {
          const double w = std::sin(0.5 * t);
          return 2.0 * w * w * std::pow(t, -1.0 - 2.0 * s);
        },
        0.5 * hi, hi);
  }
  // Analytic stub on [0, eps] from 1 - cos t = t^2/2 (1 + O(t^2)).
  const double eps = std::ldexp(1.0, -levels);
  const double stub = std::pow(eps, 2.0 - 2.0 * s) / (2.0 * (2.0 - 2.0 * s));
  // Far part: integral of (1 - cos t) t^{-1-2s} over [1, inf).
  const double far = 1.0 / (2.0 * s) - cosine_tail(s);
  return 1.0 / (2.0 * (near + stub + far));
}

double torsion_identity_value(double s) {
  const auto& rule = gauss_legendre(24);
  // Q = integral over (0,1) of (1 - (1-y^2)^s) y^{-1-2s} dy, split dyadically
  // toward both endpoints; -expm1(s log1p(-y^2)) keeps the small-y
  // cancellation exact.
  const auto g = [s](double y) {
    return -std::expm1(s * std::log1p(-y * y)) * std::pow(y, -1.0 - 2.0 * s);
  };
  double q = 0.0;
  const int levels = 50;
  for (int k = 1; k < levels; ++k) {  // [2^-k-1 .. 2^-k] covering (eps, 1/2]
    const double hi = std::ldexp(1.0, -k);
    q += rule.integrate(g, 0.5 * hi, hi);
  }
  for (int k = 1; k < levels; ++k) {  // [1-2^-k .. 1-2^-k-1] covering [1/2, 1)
    const double lo = 1.0 - std::ldexp(1.0, -k);
    q += rule.integrate(g, lo, 1.0 - 0.5 * std::ldexp(1.0, -k));
  }
  // Analytic stub near 0 from 1 - (1-y^2)^s = s y^2 (1 + O(y^2)); the sliver
  // at 1 has a bounded integrand over width 2^-levels and is dropped.
  const double eps = std::ldexp(1.0, -levels);
  q += s * std::pow(eps, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);

  const double c = normalization_constant_direct(s);
  const double value = c * 2.0 * (q + 1.0 / (2.0 * s));
  return fracsteady::torsion_amplitude(fracsteady::FracOrder(s)) * value;
}

double bump_profile(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double t = 1.0 - x * x;
  return t * t * t * t;
}

double bump_apply_direct(double x, double s) {
  const auto& rule = gauss_legendre(24);
  const double wx = bump_profile(x);
  const double right = 1.0 - x;  // distance to the right boundary
  const double left = 1.0 + x;   // distance to the left boundary
  const double delta = std::min(right, left);

  // Symmetric pair on |z| < delta removes the principal value. The profile is
  // a polynomial on the whole window, so the even difference
  // w(x+z) + w(x-z) - 2 w(x) equals its exact Taylor polynomial
  // sum_m 2 w^(2m)(x) z^(2m) / (2m)! and the z-integral is elementary.
  // (Evaluating the difference numerically at dyadic depths would amplify
  // 1-ulp cancellation noise by z^(-1-2s).)
  const double t = 1.0 - x * x;
  const double coeff[4] = {
      -8.0 * t * t * t + 48.0 * x * x * t * t,               // w''(x)
      12.0 * t * t - 96.0 * x * x * t + 32.0 * x * x * x * x,  // w''''(x)/12
      -8.0 * t + 48.0 * x * x,                               // w^(6)(x)/360
      2.0,                                                   // w^(8)(x)/8!
  };
  double inner = 0.0;
  for (int m = 1; m <= 4; ++m) {
    inner -= coeff[m - 1] * std::pow(delta, 2.0 * m - 2.0 * s) / (2.0 * m - 2.0 * s);
  }

  // One-sided remainder on [delta, L) toward the farther boundary.
  const double L = std::max(right, left);
  const double sign = (right < left) ? -1.0 : 1.0;  // farther side direction
  const auto one_sided = [&](double z) {
    return (wx - bump_profile(x + sign * z)) * std::pow(z, -1.0 - 2.0 * s);
  };
  double outer = 0.0;
  double lo = delta;
  while (lo < L) {
    const double hi = std::min(2.0 * lo, L);
    outer += rule.integrate(one_sided, lo, hi);
    lo = hi;
  }
  // Exterior of (-1,1), where the profile vanishes.
  const double tail = wx * (std::pow(right, -2.0 * s) + std::pow(left, -2.0 * s)) / (2.0 * s);

  return normalization_constant_direct(s) * (inner + outer + tail);
}

}  // namespace oracles
