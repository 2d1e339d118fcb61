#pragma once

#include <cmath>
#include <vector>

#include "vario/boundary_stats.hpp"
#include "vario/derivatives.hpp"
#include "vario/domains.hpp"

namespace vario {

struct VariocentreResult2 {
  Vec2 location{0, 0};
  double min_variance = 0.0;
  double residual = 0.0;  // variocentre_residual certificate
  int iterations = 0;
  bool converged = false;
  std::vector<double> variance_trace;  // accepted iterate values, descending
};

struct VariocentreResult3 {
  Vec3 location{0, 0, 0};
  double min_variance = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;  // local minimizer only; 3D uniqueness is not claimed
  std::vector<double> variance_trace;
};

namespace detail {

constexpr double armijo_c = 1e-4;
constexpr double backtrack = 0.5;

/// Steepest descent with a derivative-guided line search. The directional
/// derivative along the search line is analytic and machine-accurate, so the
/// step is placed by a secant estimate of its zero; Armijo acceptance on the
/// objective backtracks from there. Near the minimum the true decrease drops
/// below the quadrature roundoff of the objective, so a step whose decrease
/// is unmeasurable (within noise_floor) is accepted on the derivative's
/// evidence instead of looping forever.
///
/// Vec: Vec2 or Vec3. grad(z) -> Vec, obj(z) -> double,
/// dderiv(z, unit dir) -> double, max_step(z, unit dir) -> double (already
/// including the interior safety fraction), inside(z) -> bool.
template <typename Vec, typename Grad, typename Obj, typename DDeriv, typename MaxStep,
          typename Inside, typename Result>
void descend(Vec seed, double tol, int max_iter, Grad&& grad, Obj&& obj, DDeriv&& dderiv,
             MaxStep&& max_step, Inside&& inside, double diam, Result& result, double& out_gn) {
  Vec z = seed;
  double v = obj(z);
  result.variance_trace.push_back(v);
  double step = 0.25 * diam;
  double gn = 0.0;

  for (int iter = 0; iter < max_iter; ++iter) {
    const Vec g = grad(z);
    gn = norm(g);
    result.iterations = iter;
    if (gn <= tol) {
      result.converged = true;
      break;
    }
    const Vec dir = g * (-1.0 / gn);
    const double t_max = max_step(z, dir);

    // Secant step toward the zero of h(t) = d/dt v(z + t dir); h(0) = -gn
    // and h is strictly increasing along the line.
    double t_probe = std::min(std::max(step, 1e-3 * t_max), t_max);
    const double h_probe = dderiv(z + dir * t_probe, dir);
    double t = t_probe;
    if (h_probe > -gn) {
      t = t_probe * gn / (h_probe + gn);  // secant through (0,-gn),(t_probe,h_probe)
      if (!(t > 0.0) || t > t_max) t = t_max;
    } else {
      t = t_max;
    }

    const double noise_floor = 1e-13 * (1.0 + std::abs(v));
    bool accepted = false;
    for (int bt = 0; bt < 80 && !accepted; ++bt) {
      const Vec trial = z + dir * t;
      if (inside(trial)) {
        const double v_trial = obj(trial);
        const bool armijo_ok = v_trial <= v - armijo_c * t * gn;
        const bool below_resolution = armijo_c * t * gn <= noise_floor && v_trial <= v + noise_floor;
        if (armijo_ok || below_resolution) {
          z = trial;
          v = std::min(v, v_trial);
          step = t;
          accepted = true;
        }
      }
      if (!accepted) t *= backtrack;
    }
    result.variance_trace.push_back(v);
    if (!accepted) break;  // step collapsed below resolution
  }

  result.location = z;
  result.min_variance = v;
  out_gn = gn;
}

}  // namespace detail

/// Minimize the (strictly convex) 2D boundary-distance variance from an
/// explicit interior seed. The gradient comes from the analytic directional
/// derivatives at sigma = 0 and sigma = pi/2; the derivative is linear in
/// direction, so two evaluations determine it. Steps that would exit the
/// domain are capped at half the remaining chord.
inline VariocentreResult2 find_variocentre_2d_from(const ConvexDomain2& domain, Vec2 seed,
                                                   double tol = 1e-8, int max_iter = 500,
                                                   int n_nodes = 4096) {
  if (!(tol > 0)) throw std::invalid_argument("find_variocentre_2d: tol must be positive");
  if (!contains(domain, seed)) throw NotInteriorError();

  VariocentreResult2 result;
  double gn = 0.0;
  detail::descend(
      seed, tol, max_iter,
      [&](Vec2 z) {
        return Vec2{d1_v_2d(domain, z, 0.0, n_nodes).value,
                    d1_v_2d(domain, z, 0.5 * pi, n_nodes).value};
      },
      [&](Vec2 z) { return stats2(domain, z, n_nodes).variance; },
      [&](Vec2 z, Vec2 dir) { return d1_v_2d(domain, z, std::atan2(dir.y, dir.x), n_nodes).value; },
      [&](Vec2 z, Vec2 dir) { return 0.5 * ray_distance(domain, z, std::atan2(dir.y, dir.x)); },
      [&](Vec2 z) { return contains(domain, z); }, diameter(domain), result, gn);

  result.residual = variocentre_residual(domain, result.location, 64, n_nodes);
  if (!result.converged && result.residual <= tol) result.converged = true;
  return result;
}

/// Locate the variocentre starting from the domain's natural seed
/// (polygon centroid, disk center).
inline VariocentreResult2 find_variocentre_2d(const ConvexDomain2& domain, double tol = 1e-8,
                                              int max_iter = 500, int n_nodes = 4096) {
  return find_variocentre_2d_from(domain, interior_seed(domain), tol, max_iter, n_nodes);
}

/// Best-effort 3D variance minimizer with the same descent scheme. The
/// result is a local minimizer; convexity of the 3D variance is open, so no
/// uniqueness is claimed.
inline VariocentreResult3 find_min_variance_3d(const ConvexDomain3& domain, double tol = 1e-8,
                                               int max_iter = 500, int n_phi = 512,
                                               int n_theta = 512) {
  if (!(tol > 0)) throw std::invalid_argument("find_min_variance_3d: tol must be positive");

  VariocentreResult3 result;
  double gn = 0.0;
  detail::descend(
      interior_seed(domain), tol, max_iter,
      [&](Vec3 z) {
        return Vec3{d1_v_3d(domain, z, Vec3{1, 0, 0}, n_phi, n_theta).value,
                    d1_v_3d(domain, z, Vec3{0, 1, 0}, n_phi, n_theta).value,
                    d1_v_3d(domain, z, Vec3{0, 0, 1}, n_phi, n_theta).value};
      },
      [&](Vec3 z) { return stats3(domain, z, n_phi, n_theta).variance; },
      [&](Vec3 z, Vec3 dir) { return d1_v_3d(domain, z, dir, n_phi, n_theta).value; },
      [&](Vec3 z, Vec3 dir) { return 0.5 * ray_distance(domain, z, dir); },
      [&](Vec3 z) { return contains(domain, z); }, diameter(domain), result, gn);

  result.gradient_norm = gn;
  return result;
}

}  // namespace vario
