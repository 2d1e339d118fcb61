#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vario/boundary_stats.hpp"
#include "vario/derivatives.hpp"
#include "vario/domains.hpp"
#include "vario/elliptic.hpp"
#include "vario/errors.hpp"

namespace vario {

/// atanh via its logarithm form, clamped just below 1 so annulus bounds can
/// be evaluated with arguments arbitrarily close to the end of their range.
inline double inv_tanh(double x) {
  x = std::min(x, 1.0 - 1e-12);
  return 0.5 * std::log((1.0 + x) / (1.0 - x));
}

/// Annulus lower-bound function controlling the sign of the radial variance
/// derivative for domains pinched between circles of radii 1 and 1+eps:
///   F(r,eps) = ln((1-r^2)/((1+eps)^2-r^2)) + (2/r)(K(r)-E(r))
///            + (2(1+eps)/r)(K(r/(1+eps))-E(r/(1+eps))),
/// with the continuous eps->0 limit (4/r)(K(r)-E(r)).
inline double annulus_F(double r, double eps) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("annulus_F: r must lie in (0,1)");
  if (!(eps >= 0.0)) throw std::domain_error("annulus_F: eps must be >= 0");
  if (eps == 0.0) return 4.0 / r * ellip_K_minus_E(r);
  const double op = 1.0 + eps;
  return std::log((1.0 - r * r) / (op * op - r * r)) + 2.0 / r * ellip_K_minus_E(r) +
         2.0 * op / r * ellip_K_minus_E(r / op);
}

/// Root r(eps) of F(., eps) on (0,1): below it F is negative, above it F is
/// positive on the sampled grid. Throws NoSignChangeError when F never
/// becomes positive (eps too large).
inline double annulus_threshold(double eps, double bracket_tol = 1e-9) {
  if (!(eps > 0.0)) throw std::invalid_argument("annulus_threshold: eps must be positive");
  constexpr int grid_n = 1000;
  double lo = 0.0, hi = 0.0;
  int last_nonpos = -1;
  bool any_positive = false;
  for (int k = 1; k < grid_n; ++k) {
    const double r = double(k) / grid_n;
    if (annulus_F(r, eps) <= 0.0)
      last_nonpos = k;
    else
      any_positive = true;
  }
  if (!any_positive && annulus_F(1.0 - 1e-6, eps) <= 0.0)
    throw NoSignChangeError("annulus_threshold: F(., eps) stays non-positive on (0,1)");
  if (last_nonpos < 0) {
    // Positive on the whole grid: the crossing sits below the first grid
    // point. F(0+) = -2 ln(1+eps) < 0 guarantees a bracket.
    lo = 1e-12;
    hi = 1.0 / grid_n;
  } else if (last_nonpos == grid_n - 1) {
    lo = double(last_nonpos) / grid_n;
    hi = 1.0 - 1e-6;
    if (annulus_F(hi, eps) <= 0.0)
      throw NoSignChangeError("annulus_threshold: F(., eps) stays non-positive on (0,1)");
  } else {
    lo = double(last_nonpos) / grid_n;
    hi = double(last_nonpos + 1) / grid_n;
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double f = annulus_F(mid, eps);
    if (std::abs(f) <= bracket_tol) return mid;
    (f <= 0.0 ? lo : hi) = mid;
  }
  return mid;
}

/// Near-boundary slope record: directional variance derivatives at points
/// z_delta = (1-delta) w + delta z0 sliding toward the nearest boundary
/// point w, with slope/ln(1/delta) ratios and the explicit proof-side lower
/// bounds.
struct SlopeProbe {
  std::vector<double> deltas;
  std::vector<double> slopes;
  std::vector<double> ratios;
  std::vector<double> lower_bounds;
};

namespace detail {

inline void check_probe_deltas(const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("near-boundary probe: empty delta list");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0 && deltas[i] < 1.0))
      throw std::invalid_argument("near-boundary probe: deltas must lie in (0,1)");
    if (deltas[i] < 1e-6)
      throw std::invalid_argument("near-boundary probe: delta floor is 1e-6");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw std::invalid_argument("near-boundary probe: deltas must be strictly decreasing");
  }
}

/// Nearest boundary point of a 2D convex domain from an interior point.
inline Vec2 nearest_boundary_point_2d(const ConvexDomain2& domain, Vec2 z0) {
  if (const auto* disk = std::get_if<Disk2>(&domain)) {
    const Vec2 d = z0 - disk->center;
    const double n = norm(d);
    if (n < 1e-12) return disk->center + Vec2{disk->radius, 0.0};
    return disk->center + d * (disk->radius / n);
  }
  if (const auto* poly = std::get_if<ConvexPolygon>(&domain)) return poly->nearest_boundary_point(z0);
  throw std::invalid_argument("near-boundary probe: comparison domains are not supported");
}

inline Vec3 nearest_boundary_point_3d(const ConvexDomain3& domain, Vec3 x0) {
  if (const auto* ball = std::get_if<Ball3>(&domain)) {
    const Vec3 d = x0 - ball->center;
    const double n = norm(d);
    if (n < 1e-12) return ball->center + Vec3{ball->radius, 0.0, 0.0};
    return ball->center + d * (ball->radius / n);
  }
  const auto& poly = std::get<Polytope3>(domain);
  double dmin = std::numeric_limits<double>::infinity();
  Vec3 best{0, 0, 0};
  bool ambiguous = false;
  for (const auto& h : poly.half_spaces()) {
    const double d = h.offset - dot(h.normal, x0);
    const Vec3 foot = x0 + h.normal * d;
    if (d < dmin - 1e-12) {
      dmin = d;
      best = foot;
      ambiguous = false;
    } else if (d <= dmin + 1e-12 && norm(foot - best) > 1e-9) {
      ambiguous = true;
    }
  }
  if (ambiguous) throw AmbiguousNearestPointError();
  return best;
}

}  // namespace detail

/// 2D near-boundary probe along the inward-nearest direction (or along an
/// explicit sigma when the nearest point ties, e.g. at symmetry centers).
/// The recorded lower bound is (I1(z_d)/pi)(ln4 - 2 + ln(2-d) + ln(1/d)).
inline SlopeProbe near_boundary_probe_2d(const ConvexDomain2& domain, Vec2 z0,
                                         const std::vector<double>& deltas, int n_nodes = 4096,
                                         std::optional<double> sigma_override = std::nullopt) {
  detail::check_probe_deltas(deltas);
  if (!contains(domain, z0)) throw NotInteriorError();
  double sigma;
  Vec2 w;
  if (sigma_override) {
    sigma = *sigma_override;
    w = z0 + unit_vector(sigma) * ray_distance(domain, z0, sigma);
  } else {
    w = detail::nearest_boundary_point_2d(domain, z0);
    sigma = std::atan2(w.y - z0.y, w.x - z0.x);
  }
  SlopeProbe probe;
  for (double d : deltas) {
    const Vec2 zd = w * (1.0 - d) + z0 * d;
    const double slope = d1_v_2d(domain, zd, sigma, n_nodes).value;
    const double i1 = stats2(domain, zd, n_nodes).i1;
    probe.deltas.push_back(d);
    probe.slopes.push_back(slope);
    probe.ratios.push_back(slope / std::log(1.0 / d));
    probe.lower_bounds.push_back(i1 / pi *
                                 (std::log(4.0) - 2.0 + std::log(2.0 - d) + std::log(1.0 / d)));
  }
  return probe;
}

/// 3D analogue. The recorded lower bound instantiates the proof's O(1) term:
/// (I1(x_d)/2) ln(2/d - 1) - diam(U) - I1(x_d).
inline SlopeProbe near_boundary_probe_3d(const ConvexDomain3& domain, Vec3 x0,
                                         const std::vector<double>& deltas, int n_phi = 512,
                                         int n_theta = 512,
                                         std::optional<Vec3> sigma_override = std::nullopt) {
  detail::check_probe_deltas(deltas);
  if (!contains(domain, x0)) throw NotInteriorError();
  Vec3 sigma, w;
  if (sigma_override) {
    sigma = normalized(*sigma_override);
    w = x0 + sigma * ray_distance(domain, x0, sigma);
  } else {
    w = detail::nearest_boundary_point_3d(domain, x0);
    sigma = normalized(w - x0);
  }
  const double diam = diameter(domain);
  SlopeProbe probe;
  for (double d : deltas) {
    const Vec3 xd = w * (1.0 - d) + x0 * d;
    const double slope = d1_v_3d(domain, xd, sigma, n_phi, n_theta).value;
    const double i1 = stats3(domain, xd, n_phi, n_theta).i1;
    probe.deltas.push_back(d);
    probe.slopes.push_back(slope);
    probe.ratios.push_back(slope / std::log(1.0 / d));
    probe.lower_bounds.push_back(0.5 * i1 * std::log(2.0 / d - 1.0) - diam - i1);
  }
  return probe;
}

/// Star-shaped comparison domain V from the annulus argument: anchored at
/// (r,0), boundary on the circle of radius 1+eps ahead of the anchor and on
/// the unit circle behind it.
inline RadialDomain2 comparison_domain_v(double r, double eps) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("comparison_domain_v: r must lie in (0,1)");
  if (!(eps >= 0.0)) throw std::domain_error("comparison_domain_v: eps must be >= 0");
  const double op = 1.0 + eps;
  auto radial = [r, op](double phi) {
    // normalize to (-pi, pi]; outer branch on |phi| <= pi/2 inclusive
    double t = std::remainder(phi, two_pi);
    const double s = std::sin(t), c = std::cos(t);
    if (std::abs(t) <= 0.5 * pi) return -r * c + std::sqrt(op * op - r * r * s * s);
    return -r * c + std::sqrt(1.0 - r * r * s * s);
  };
  return RadialDomain2({r, 0.0}, radial, {0.5 * pi, 1.5 * pi});
}

}  // namespace vario
