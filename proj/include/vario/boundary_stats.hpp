#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vario/domains.hpp"
#include "vario/elliptic.hpp"
#include "vario/quadrature.hpp"

namespace vario {

/// Mean and mean-square chord length over all directions, with the variance
/// of the chord length. `variance` is clamped at zero; the raw difference
/// i2 - i1^2 is kept in `variance_raw`.
struct BoundaryStats {
  double i1 = 0.0;
  double i2 = 0.0;
  double variance = 0.0;
  double variance_raw = 0.0;
  int nodes_phi = 0;
  int nodes_theta = 0;  // 0 for 2D results
  bool comparison_only = false;
};

namespace detail {

inline BoundaryStats finish_stats(double i1, double i2, int n_phi, int n_theta, bool comparison) {
  BoundaryStats s;
  s.i1 = i1;
  s.i2 = i2;
  s.variance_raw = i2 - i1 * i1;
  s.variance = std::max(s.variance_raw, 0.0);
  s.nodes_phi = n_phi;
  s.nodes_theta = n_theta;
  s.comparison_only = comparison;
  return s;
}

/// Breakpoint list covering [base, base + 2pi] with the domain's angular
/// kinks (as seen from x0) inserted.
inline std::vector<double> full_circle_panels(const std::vector<double>& kinks, double base = 0.0) {
  std::vector<double> bp{base};
  for (double a : kinks) {
    double t = std::fmod(a - base, two_pi);
    if (t < 0) t += two_pi;
    if (t > 1e-12 && t < two_pi - 1e-12) bp.push_back(base + t);
  }
  bp.push_back(base + two_pi);
  std::sort(bp.begin(), bp.end());
  return bp;
}

}  // namespace detail

/// I1, I2 and variance of the distance-to-boundary function at x0.
/// Polygonal boundaries get the angular range split at vertex directions so
/// each panel integrand is smooth; smooth boundaries use the periodic
/// trapezoid rule.
inline BoundaryStats stats2(const ConvexDomain2& domain, Vec2 x0, int n_nodes = 4096) {
  if (n_nodes < 16) throw std::invalid_argument("stats2: n_nodes must be >= 16");
  if (!contains(domain, x0)) throw NotInteriorError();
  const bool comparison = std::holds_alternative<RadialDomain2>(domain);
  const auto kinks = angular_breakpoints(domain, x0);

  double i1 = 0.0, i2 = 0.0;
  if (kinks.empty()) {
    double s1 = 0.0, s2 = 0.0;
    const double h = two_pi / n_nodes;
    for (int i = 0; i < n_nodes; ++i) {
      const double d = ray_distance(domain, x0, i * h);
      s1 += d;
      s2 += d * d;
    }
    i1 = s1 / n_nodes;
    i2 = s2 / n_nodes;
  } else {
    const auto panels = detail::full_circle_panels(kinks);
    i1 = integrate_panels([&](double phi) { return ray_distance(domain, x0, phi); }, panels, n_nodes) / two_pi;
    i2 = integrate_panels([&](double phi) {
      const double d = ray_distance(domain, x0, phi);
      return d * d;
    }, panels, n_nodes) / two_pi;
  }
  return detail::finish_stats(i1, i2, n_nodes, 0, comparison);
}

/// 3D statistics by a product rule: Gauss-Legendre in cos(phi), absorbing
/// the sin(phi) area weight, times periodic trapezoid in theta.
inline BoundaryStats stats3(const ConvexDomain3& domain, Vec3 x0, int n_phi = 512, int n_theta = 512) {
  if (n_phi < 16 || n_theta < 16) throw std::invalid_argument("stats3: node counts must be >= 16");
  if (!contains(domain, x0)) throw NotInteriorError();
  const auto rule = gauss_legendre(n_phi);
  double s1 = 0.0, s2 = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    const double theta = two_pi * j / n_theta;
    const double ct = std::cos(theta), st = std::sin(theta);
    for (int i = 0; i < n_phi; ++i) {
      const double u = rule.nodes[i];  // u = cos(phi)
      const double sp = std::sqrt(std::max(0.0, 1.0 - u * u));
      const double d = ray_distance(domain, x0, {u, sp * ct, sp * st});
      s1 += rule.weights[i] * d;
      s2 += rule.weights[i] * d * d;
    }
  }
  // (1/4pi) * (2pi/n_theta) * sum, and GL weights already cover du on [-1,1].
  const double scale = 1.0 / (2.0 * n_theta);
  return detail::finish_stats(s1 * scale, s2 * scale, n_phi, n_theta, false);
}

/// Convergence diagnostic for the 3D product rule, mainly for faceted
/// domains where no panel splitting compensates the chord kinks: the change
/// in (i1, i2) when both node counts double.
inline double stats3_refinement_delta(const ConvexDomain3& domain, Vec3 x0, int n_phi = 512,
                                      int n_theta = 512) {
  const auto coarse = stats3(domain, x0, n_phi, n_theta);
  const auto fine = stats3(domain, x0, 2 * n_phi, 2 * n_theta);
  return std::max(std::abs(coarse.i1 - fine.i1), std::abs(coarse.i2 - fine.i2));
}

/// Closed-form variance of the unit disk at radius r: 1 - 4 E(r)^2 / pi^2.
inline double disk_variance_oracle(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("disk_variance_oracle: r must lie in [0,1)");
  const double e = ellip_E(r);
  return 1.0 - 4.0 * e * e / (pi * pi);
}

/// Closed-form unit-ball statistics at radius r:
/// i1 = 1/2 + ((1-r^2)/(4r)) ln((1+r)/(1-r)), i2 = 1 - r^2/3.
inline BoundaryStats ball_stats_oracle(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("ball_stats_oracle: r must lie in [0,1)");
  double i1;
  if (r < 1e-4) {
    // series of ((1-r^2)/(4r)) ln((1+r)/(1-r)) about r = 0
    const double r2 = r * r;
    i1 = 0.5 + 0.5 * (1.0 - r2) * (1.0 + r2 / 3.0 + r2 * r2 / 5.0 + r2 * r2 * r2 / 7.0);
  } else {
    i1 = 0.5 + (1.0 - r * r) / (4.0 * r) * std::log((1.0 + r) / (1.0 - r));
  }
  const double i2 = 1.0 - r * r / 3.0;
  return detail::finish_stats(i1, i2, 0, 0, false);
}

}  // namespace vario
