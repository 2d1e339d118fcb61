#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vario/geometry.hpp"

namespace vario {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes and weights on [-1,1], Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

inline const QuadratureRule& gauss_legendre_16() {
  static const QuadratureRule rule = gauss_legendre(16);
  return rule;
}

/// Composite 16-node Gauss-Legendre over [a,b] split into n_sub equal cells.
template <typename F>
double integrate_subdivided(F&& f, double a, double b, int n_sub) {
  const auto& rule = gauss_legendre_16();
  const double h = (b - a) / n_sub;
  double total = 0.0;
  for (int s = 0; s < n_sub; ++s) {
    const double lo = a + s * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += acc * 0.5 * h;
  }
  return total;
}

/// Integrate f over [a,b] with roughly n_total nodes of composite GL-16.
template <typename F>
double integrate_interval(F&& f, double a, double b, int n_total) {
  const int n_sub = std::max(1, (n_total + 15) / 16);
  return integrate_subdivided(f, a, b, n_sub);
}

/// Panel-wise integration: `breakpoints` must be sorted and span the whole
/// range; each panel gets a node budget proportional to its length.
template <typename F>
double integrate_panels(F&& f, const std::vector<double>& breakpoints, int n_total) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate_panels: need >= 2 breakpoints");
  const double span = breakpoints.back() - breakpoints.front();
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double a = breakpoints[p], b = breakpoints[p + 1];
    if (b - a < 1e-14) continue;
    const int n_sub = std::max(1, static_cast<int>(std::lround((b - a) / span * n_total / 16.0)));
    total += integrate_subdivided(f, a, b, n_sub);
  }
  return total;
}

/// Periodic trapezoid over [0, 2pi): spectrally accurate for smooth
/// periodic integrands.
template <typename F>
double integrate_periodic(F&& f, int n) {
  if (n < 1) throw std::invalid_argument("integrate_periodic: n must be >= 1");
  double acc = 0.0;
  const double h = two_pi / n;
  for (int i = 0; i < n; ++i) acc += f(i * h);
  return acc * h;
}

}  // namespace vario
