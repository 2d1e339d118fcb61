#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vario/boundary_stats.hpp"
#include "vario/domains.hpp"
#include "vario/quadrature.hpp"

namespace vario {

struct DirectionalDerivative {
  enum class Target { mean_chord, variance };

  double value = 0.0;
  int order = 1;
  Target target = Target::variance;
  double sigma = 0.0;        // 2D direction angle
  Vec3 direction{1, 0, 0};   // 3D direction
  int n_nodes = 0;           // 2D angular resolution
  int n_phi = 0, n_theta = 0;
};

namespace detail {

// The log-form integrands need d > 0 with some margin; derivative
// operations reject points within 1e-9 of the boundary relative to the
// domain size.
inline void require_derivative_interior(const ConvexDomain2& domain, Vec2 z0) {
  if (!contains(domain, z0, 1e-9 * diameter(domain))) throw NotInteriorError();
}

inline void require_derivative_interior(const ConvexDomain3& domain, Vec3 x0) {
  if (!contains(domain, x0, 1e-9 * diameter(domain))) throw NotInteriorError();
}

struct AngularNodes {
  std::vector<double> phi;
  std::vector<double> weight;
};

/// Quadrature nodes over a full period: panel-split GL-16 around the chord
/// function's kink directions, plain trapezoid for smooth boundaries.
inline AngularNodes angular_nodes_full(const ConvexDomain2& domain, Vec2 x0, int n_nodes) {
  AngularNodes out;
  const auto kinks = angular_breakpoints(domain, x0);
  if (kinks.empty()) {
    out.phi.resize(n_nodes);
    out.weight.assign(n_nodes, two_pi / n_nodes);
    for (int i = 0; i < n_nodes; ++i) out.phi[i] = two_pi * i / n_nodes;
    return out;
  }
  const auto panels = full_circle_panels(kinks);
  const auto& rule = gauss_legendre_16();
  for (std::size_t p = 0; p + 1 < panels.size(); ++p) {
    const double a = panels[p], b = panels[p + 1];
    if (b - a < 1e-14) continue;
    const int n_sub = std::max(1, static_cast<int>(std::lround((b - a) / two_pi * n_nodes / 16.0)));
    const double h = (b - a) / n_sub;
    for (int s = 0; s < n_sub; ++s) {
      const double mid = a + (s + 0.5) * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        out.phi.push_back(mid + 0.5 * h * rule.nodes[i]);
        out.weight.push_back(0.5 * h * rule.weights[i]);
      }
    }
  }
  return out;
}

/// Breakpoints for the half-period window [sigma-pi/2, sigma+pi/2]: kink
/// directions of both d(phi) and d(phi+pi) folded into the window.
inline std::vector<double> window_panels(const ConvexDomain2& domain, Vec2 x0, double sigma) {
  const double lo = sigma - 0.5 * pi, hi = sigma + 0.5 * pi;
  std::vector<double> bp{lo, hi};
  for (double a : angular_breakpoints(domain, x0)) {
    for (double shift : {0.0, -pi}) {
      double t = std::fmod(a + shift - lo, two_pi);
      if (t < 0) t += two_pi;
      if (t > 1e-12 && t < pi - 1e-12) bp.push_back(lo + t);
    }
  }
  std::sort(bp.begin(), bp.end());
  return bp;
}

}  // namespace detail

/// First directional derivative of the mean chord length I1, evaluated in
/// the integrated-by-parts form (1/2pi) oint cos(phi-sigma) ln d(z0,phi) dphi,
/// which needs no derivative of the chord function.
inline DirectionalDerivative d1_i1_2d(const ConvexDomain2& domain, Vec2 z0, double sigma,
                                      int n_nodes = 4096) {
  if (n_nodes < 64) throw std::invalid_argument("d1_i1_2d: n_nodes must be >= 64");
  detail::require_derivative_interior(domain, z0);
  const auto nodes = detail::angular_nodes_full(domain, z0, n_nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.phi.size(); ++i)
    acc += nodes.weight[i] * std::cos(nodes.phi[i] - sigma) *
           std::log(ray_distance(domain, z0, nodes.phi[i]));
  DirectionalDerivative d;
  d.value = acc / two_pi;
  d.order = 1;
  d.target = DirectionalDerivative::Target::mean_chord;
  d.sigma = sigma;
  d.n_nodes = n_nodes;
  return d;
}

/// Second directional derivative of I1:
///   -(1/2pi) oint ( sin^2(phi-sigma) + 2 cos(2(phi-sigma)) ) / d(z0,phi) dphi.
/// The cos(2.) part is the integrated-by-parts image of the cross term
/// 2 sin(phi-sigma) cos(phi-sigma) d'/d^2 arising from the perturbation
/// expansion; it vanishes for constant d, leaving -1/2 at a disk center.
/// Strictly negative on convex domains.
inline DirectionalDerivative d2_i1_2d(const ConvexDomain2& domain, Vec2 z0, double sigma,
                                      int n_nodes = 4096) {
  if (n_nodes < 64) throw std::invalid_argument("d2_i1_2d: n_nodes must be >= 64");
  detail::require_derivative_interior(domain, z0);
  const auto nodes = detail::angular_nodes_full(domain, z0, n_nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.phi.size(); ++i) {
    const double psi = nodes.phi[i] - sigma;
    const double s = std::sin(psi);
    acc += nodes.weight[i] * (s * s + 2.0 * std::cos(2.0 * psi)) /
           ray_distance(domain, z0, nodes.phi[i]);
  }
  DirectionalDerivative d;
  d.value = -acc / two_pi;
  d.order = 2;
  d.target = DirectionalDerivative::Target::mean_chord;
  d.sigma = sigma;
  d.n_nodes = n_nodes;
  return d;
}

/// First directional derivative of the variance via the antipodal log-ratio
/// window integral
///   (I1/pi) int_{sigma-pi/2}^{sigma+pi/2} cos(phi-sigma)
///           ln( d(z0,phi+pi)/d(z0,phi) ) dphi.
inline DirectionalDerivative d1_v_2d(const ConvexDomain2& domain, Vec2 z0, double sigma,
                                     int n_nodes = 4096) {
  if (n_nodes < 64) throw std::invalid_argument("d1_v_2d: n_nodes must be >= 64");
  detail::require_derivative_interior(domain, z0);
  const double i1 = stats2(domain, z0, n_nodes).i1;
  const auto panels = detail::window_panels(domain, z0, sigma);
  const double integral = integrate_panels(
      [&](double phi) {
        return std::cos(phi - sigma) *
               std::log(ray_distance(domain, z0, phi + pi) / ray_distance(domain, z0, phi));
      },
      panels, n_nodes);
  DirectionalDerivative d;
  d.value = i1 / pi * integral;
  d.order = 1;
  d.target = DirectionalDerivative::Target::variance;
  d.sigma = sigma;
  d.n_nodes = n_nodes;
  return d;
}

/// Stationarity certificate for the variocentre: the largest magnitude of
/// oint cos(phi-sigma) ln d(z0,phi) dphi over n_sigma equispaced directions.
/// Vanishes exactly at the variocentre.
inline double variocentre_residual(const ConvexDomain2& domain, Vec2 z0, int n_sigma = 64,
                                   int n_nodes = 4096) {
  if (n_sigma < 2) throw std::invalid_argument("variocentre_residual: n_sigma must be >= 2");
  if (n_nodes < 64) throw std::invalid_argument("variocentre_residual: n_nodes must be >= 64");
  detail::require_derivative_interior(domain, z0);
  const auto nodes = detail::angular_nodes_full(domain, z0, n_nodes);
  std::vector<double> log_d(nodes.phi.size());
  for (std::size_t i = 0; i < nodes.phi.size(); ++i)
    log_d[i] = std::log(ray_distance(domain, z0, nodes.phi[i]));
  double worst = 0.0;
  for (int j = 0; j < n_sigma; ++j) {
    const double sigma = two_pi * j / n_sigma;
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.phi.size(); ++i)
      acc += nodes.weight[i] * std::cos(nodes.phi[i] - sigma) * log_d[i];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// 3D directional derivative
// ---------------------------------------------------------------------------

/// Integrand kernel of the 3D variance derivative after the rigid motion
/// sending the base point to the origin and the direction to +x:
///   G(phi,theta) = 2 I1 ln( d(-u)/d(u) ) + ( d(u) - d(-u) ),
/// with u the spherical direction (phi,theta) in the rotated frame.
/// Identically zero when antipodal chords agree.
class GKernel {
 public:
  GKernel(const ConvexDomain3& domain, Vec3 x0, Vec3 sigma, double i1)
      : domain_(&domain), x0_(x0), rot_(rotation_to_x_axis(normalized(sigma))), i1_(i1) {}

  double chord(double phi, double theta) const {
    return ray_distance(*domain_, x0_, rot_.apply_transposed(unit_vector({phi, theta})));
  }

  double operator()(double phi, double theta) const {
    const Vec3 u = rot_.apply_transposed(unit_vector({phi, theta}));
    const double fwd = ray_distance(*domain_, x0_, u);
    const double back = ray_distance(*domain_, x0_, -u);
    return 2.0 * i1_ * std::log(back / fwd) + (fwd - back);
  }

  double i1() const { return i1_; }

 private:
  const ConvexDomain3* domain_;
  Vec3 x0_;
  Mat3 rot_;
  double i1_;
};

enum class Derivative3DMode {
  log_kernel,      // (1/4pi) int int_0^{pi/2} sin(2phi) G(phi,theta) dphi dtheta
  phi_derivative,  // cross-check form with a finite-difference d d/d phi factor
};

/// Directional derivative of the 3D variance along unit vector `sigma`.
inline DirectionalDerivative d1_v_3d(const ConvexDomain3& domain, Vec3 x0, Vec3 sigma,
                                     int n_phi = 512, int n_theta = 512,
                                     Derivative3DMode mode = Derivative3DMode::log_kernel) {
  if (n_phi < 64 || n_theta < 64) throw std::invalid_argument("d1_v_3d: node counts must be >= 64");
  detail::require_derivative_interior(domain, x0);
  const double i1 = stats3(domain, x0, n_phi, n_theta).i1;
  const GKernel kernel(domain, x0, sigma, i1);

  double value = 0.0;
  if (mode == Derivative3DMode::log_kernel) {
    const auto rule = gauss_legendre(n_phi);
    double acc = 0.0;
    for (int j = 0; j < n_theta; ++j) {
      const double theta = two_pi * j / n_theta;
      for (int i = 0; i < n_phi; ++i) {
        const double phi = 0.25 * pi * (rule.nodes[i] + 1.0);  // [0, pi/2]
        acc += rule.weights[i] * std::sin(2.0 * phi) * kernel(phi, theta);
      }
    }
    value = acc * (0.25 * pi) * (two_pi / n_theta) / (4.0 * pi);
  } else {
    const double h = 1e-5;
    const auto rule = gauss_legendre(n_phi);
    double acc = 0.0;
    for (int j = 0; j < n_theta; ++j) {
      const double theta = two_pi * j / n_theta;
      for (int i = 0; i < n_phi; ++i) {
        const double phi = 0.5 * pi * (rule.nodes[i] + 1.0);  // [0, pi]
        const double d = kernel.chord(phi, theta);
        const double d_phi = (kernel.chord(phi + h, theta) - kernel.chord(phi - h, theta)) / (2.0 * h);
        const double s = std::sin(phi);
        acc += rule.weights[i] * s * s * d_phi * (2.0 * i1 / d - 1.0);
      }
    }
    value = acc * (0.5 * pi) * (two_pi / n_theta) / (4.0 * pi);
  }

  DirectionalDerivative d;
  d.value = value;
  d.order = 1;
  d.target = DirectionalDerivative::Target::variance;
  d.direction = normalized(sigma);
  d.n_phi = n_phi;
  d.n_theta = n_theta;
  return d;
}

inline DirectionalDerivative d1_v_3d(const ConvexDomain3& domain, Vec3 x0, SphericalDirection sigma,
                                     int n_phi = 512, int n_theta = 512,
                                     Derivative3DMode mode = Derivative3DMode::log_kernel) {
  return d1_v_3d(domain, x0, unit_vector(sigma), n_phi, n_theta, mode);
}

}  // namespace vario
