// Shared test helpers: independent oracles (power series, adaptive Simpson,
// golden section) and random domain generators. Everything here is test-only
// and deliberately avoids the library's primary evaluation paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "vario/domains.hpp"
#include "vario/geometry.hpp"

namespace testsupport {

using vario::Vec2;
using vario::Vec3;

// --------------------------------------------------------------------------
// Elliptic-integral oracles: truncated power series, independent of the AGM.
// --------------------------------------------------------------------------

/// K(k) = (pi/2) sum ((2n)!/(2^2n (n!)^2))^2 k^{2n}
inline double series_K(double k) {
  const double k2 = k * k;
  double coef = 1.0, kp = 1.0, sum = 1.0;
  for (int n = 1; n < 4000; ++n) {
    const double f = (2.0 * n - 1.0) / (2.0 * n);
    coef *= f * f;
    kp *= k2;
    const double term = coef * kp;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 0.5 * vario::pi * sum;
}

/// E(k) = (pi/2) sum ((2n)!/(2^2n (n!)^2))^2 k^{2n}/(1-2n)
inline double series_E(double k) {
  const double k2 = k * k;
  double coef = 1.0, kp = 1.0, sum = 1.0;
  for (int n = 1; n < 4000; ++n) {
    const double f = (2.0 * n - 1.0) / (2.0 * n);
    coef *= f * f;
    kp *= k2;
    const double term = coef * kp / (1.0 - 2.0 * n);
    sum += term;
    if (std::abs(term) < 1e-17 * sum) break;
  }
  return 0.5 * vario::pi * sum;
}

/// K - E = (pi/2) sum ((2n-1)!!/(2n)!!)^2 (2n/(2n-1)) k^{2n}, n-term partial
/// sum (no convergence acceleration; used to bracket small-k values).
inline double series_K_minus_E(double k, int terms) {
  const double k2 = k * k;
  double coef = 0.25, kp = k2, sum = 0.0;
  for (int n = 1; n <= terms; ++n) {
    sum += coef * (2.0 * n / (2.0 * n - 1.0)) * kp;
    const double f = (2.0 * n + 1.0) / (2.0 * n + 2.0);
    coef *= f * f;
    kp *= k2;
  }
  return 0.5 * vario::pi * sum;
}

// --------------------------------------------------------------------------
// Generic quadrature / search oracles
// --------------------------------------------------------------------------

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Golden-section minimizer; returns the midpoint of the final bracket.
inline double golden_section(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-10) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// --------------------------------------------------------------------------
// Random convex domains
// --------------------------------------------------------------------------

/// Monotone-chain convex hull, counterclockwise, collinear points dropped.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && vario::cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 1e-9) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && vario::cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 1e-9) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline vario::ConvexPolygon random_convex_polygon(std::mt19937& rng, int n_points = 12,
                                                  double scale = 1.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  while (true) {
    std::vector<Vec2> pts(n_points);
    for (auto& p : pts) p = {u(rng), u(rng)};
    auto h = convex_hull(pts);
    if (h.size() < 4) continue;
    try {
      return vario::ConvexPolygon(h);
    } catch (const std::invalid_argument&) {
    }
  }
}

inline Vec2 random_interior_point(const vario::ConvexDomain2& d, std::mt19937& rng,
                                  double slack = 1e-2) {
  const double r = vario::diameter(d);
  const Vec2 seed = vario::interior_seed(d);
  std::uniform_real_distribution<double> u(-r, r);
  while (true) {
    const Vec2 p{seed.x + u(rng), seed.y + u(rng)};
    if (vario::contains(d, p, slack)) return p;
  }
}

/// Polytope from random tangent-ish planes around the origin.
inline vario::Polytope3 random_polytope3(std::mt19937& rng, int n_faces = 14, double rmin = 0.9,
                                         double rmax = 1.3) {
  std::uniform_real_distribution<double> ur(rmin, rmax), uz(-1.0, 1.0), ut(0.0, vario::two_pi);
  while (true) {
    std::vector<vario::HalfSpace> faces;
    for (int f = 0; f < n_faces; ++f) {
      const double z = uz(rng), t = ut(rng), s = std::sqrt(1.0 - z * z);
      faces.push_back({{s * std::cos(t), s * std::sin(t), z}, ur(rng)});
    }
    try {
      return vario::Polytope3(faces, {0, 0, 0});
    } catch (const std::invalid_argument&) {
    }
  }
}

inline vario::ConvexPolygon regular_polygon(int m, double radius = 1.0, Vec2 center = {0, 0}) {
  std::vector<Vec2> verts(m);
  for (int i = 0; i < m; ++i) {
    const double a = vario::two_pi * i / m;
    verts[i] = center + vario::unit_vector(a) * radius;
  }
  return vario::ConvexPolygon(verts);
}

inline vario::ConvexPolygon unit_square() {
  return vario::ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

/// The quadrilateral with vertices (+-1, 1), (+-2, -1).
inline vario::ConvexPolygon example_quadrilateral() {
  return vario::ConvexPolygon({{2, -1}, {1, 1}, {-1, 1}, {-2, -1}});
}

inline vario::Polytope3 axis_cube(double half_width = 1.0) {
  return vario::Polytope3({{{1, 0, 0}, half_width},
                           {{-1, 0, 0}, half_width},
                           {{0, 1, 0}, half_width},
                           {{0, -1, 0}, half_width},
                           {{0, 0, 1}, half_width},
                           {{0, 0, -1}, half_width}},
                          {0, 0, 0});
}

/// Panel breakpoints for [a,b] graded geometrically toward b; resolves
/// integrable endpoint singularities (e.g. ln cos at pi/2).
inline std::vector<double> graded_panels_toward(double a, double b, int levels = 44) {
  std::vector<double> bp{a};
  double w = (b - a) * 0.5;
  double x = a + w;
  for (int i = 0; i < levels; ++i) {
    bp.push_back(x);
    w *= 0.5;
    x += w;
  }
  bp.push_back(b);
  return bp;
}

}  // namespace testsupport
