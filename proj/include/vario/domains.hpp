#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "vario/errors.hpp"
#include "vario/geometry.hpp"
#include "vario/quadrature.hpp"

namespace vario {

inline constexpr double interior_slack = 1e-12;

// ---------------------------------------------------------------------------
// 2D domains
// ---------------------------------------------------------------------------

/// Strictly convex polygon with counterclockwise vertices.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
    const std::size_t n = verts_.size();
    if (n < 3) throw std::invalid_argument("ConvexPolygon: need at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = verts_[i];
      const Vec2 b = verts_[(i + 1) % n];
      const Vec2 c = verts_[(i + 2) % n];
      if (norm(b - a) < 1e-12) throw std::invalid_argument("ConvexPolygon: repeated vertices");
      if (cross(b - a, c - b) <= 1e-12)
        throw std::invalid_argument("ConvexPolygon: vertices must be strictly convex and counterclockwise");
    }
  }

  const std::vector<Vec2>& vertices() const { return verts_; }

  bool contains(Vec2 p, double slack = interior_slack) const {
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = verts_[i], b = verts_[(i + 1) % n];
      if (cross(b - a, p - a) <= slack * norm(b - a)) return false;
    }
    return true;
  }

  /// Chord length from interior point x0 to the boundary along angle phi.
  double ray_distance(Vec2 x0, double phi) const {
    if (!contains(x0)) throw NotInteriorError();
    const Vec2 u = unit_vector(phi);
    const std::size_t n = verts_.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = verts_[i];
      const Vec2 e = verts_[(i + 1) % n] - a;
      // x0 + t u = a + s e
      const double denom = cross(u, e);
      if (std::abs(denom) < 1e-15) continue;
      const double t = cross(a - x0, e) / denom;
      const double s = cross(a - x0, u) / denom;
      if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::min(best, t);
    }
    if (!std::isfinite(best)) throw std::logic_error("ConvexPolygon::ray_distance: no edge hit");
    return best;
  }

  double area() const {
    const std::size_t n = verts_.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += cross(verts_[i], verts_[(i + 1) % n]);
    return 0.5 * acc;
  }

  double diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
      for (std::size_t j = i + 1; j < verts_.size(); ++j)
        best = std::max(best, norm(verts_[i] - verts_[j]));
    return best;
  }

  Vec2 centroid() const {
    const std::size_t n = verts_.size();
    double a6 = 0.0;
    Vec2 c{0, 0};
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 p = verts_[i], q = verts_[(i + 1) % n];
      const double w = cross(p, q);
      a6 += w;
      c = c + (p + q) * w;
    }
    return c * (1.0 / (3.0 * a6));
  }

  /// Angles of the vertices as seen from x0, sorted ascending in [0, 2pi).
  std::vector<double> vertex_directions(Vec2 x0) const {
    std::vector<double> dirs;
    dirs.reserve(verts_.size());
    for (const Vec2& v : verts_) {
      double a = std::atan2(v.y - x0.y, v.x - x0.x);
      if (a < 0) a += two_pi;
      dirs.push_back(a);
    }
    std::sort(dirs.begin(), dirs.end());
    return dirs;
  }

  /// Nearest boundary point from an interior point. Fails when two edges
  /// tie within 1e-12 and disagree about the nearest point.
  Vec2 nearest_boundary_point(Vec2 p) const {
    const std::size_t n = verts_.size();
    double dmin = std::numeric_limits<double>::infinity();
    Vec2 best{0, 0};
    bool ambiguous = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = verts_[i], e = verts_[(i + 1) % n] - a;
      const double s = std::clamp(dot(p - a, e) / norm2(e), 0.0, 1.0);
      const Vec2 q = a + e * s;
      const double d = norm(p - q);
      if (d < dmin - 1e-12) {
        dmin = d;
        best = q;
        ambiguous = false;
      } else if (d <= dmin + 1e-12 && norm(q - best) > 1e-9) {
        ambiguous = true;
      }
    }
    if (ambiguous) throw AmbiguousNearestPointError();
    return best;
  }

 private:
  std::vector<Vec2> verts_;
};

struct Disk2 {
  Vec2 center;
  double radius;

  Disk2(Vec2 c, double r) : center(c), radius(r) {
    if (!(r > 0)) throw std::invalid_argument("Disk2: radius must be positive");
  }

  bool contains(Vec2 p, double slack = interior_slack) const {
    return norm(p - center) < radius - slack;
  }

  double ray_distance(Vec2 x0, double phi) const {
    if (!contains(x0)) throw NotInteriorError();
    const Vec2 p = x0 - center;
    const Vec2 u = unit_vector(phi);
    const double pu = dot(p, u);
    return -pu + std::sqrt(pu * pu - norm2(p) + radius * radius);
  }
};

/// Star-shaped domain given by a positive periodic radial function about an
/// anchor point. Convexity is not assumed; statistics computed on it are
/// flagged comparison-only.
class RadialDomain2 {
 public:
  RadialDomain2(Vec2 anchor, std::function<double(double)> radial,
                std::vector<double> corner_angles = {})
      : anchor_(anchor), radial_(std::move(radial)), corners_(std::move(corner_angles)) {
    if (!radial_) throw std::invalid_argument("RadialDomain2: radial function required");
    std::sort(corners_.begin(), corners_.end());
  }

  Vec2 anchor() const { return anchor_; }
  double radial(double phi) const { return radial_(phi); }

  /// Angles (about the anchor) where the radial function is not smooth.
  const std::vector<double>& corner_angles() const { return corners_; }

  bool contains(Vec2 p, double slack = interior_slack) const {
    const Vec2 d = p - anchor_;
    const double r = norm(d);
    if (r < 1e-15) return true;
    return r < radial_(std::atan2(d.y, d.x)) - slack;
  }

  double ray_distance(Vec2 x0, double phi) const {
    if (!contains(x0)) throw NotInteriorError();
    if (norm(x0 - anchor_) < 1e-12) return radial_(phi);
    // Generic interior point: march to the first boundary crossing, then
    // bisect. Signed gap is negative strictly inside.
    const Vec2 u = unit_vector(phi);
    auto gap = [&](double t) {
      const Vec2 d = x0 + u * t - anchor_;
      const double r = norm(d);
      return r - radial_(r < 1e-15 ? phi : std::atan2(d.y, d.x));
    };
    double lo = 0.0;
    double step = 0.05 * radial_(phi);
    double hi = step;
    while (gap(hi) < 0.0) {
      lo = hi;
      hi += step;
      if (hi > 1e6) throw std::logic_error("RadialDomain2::ray_distance: no boundary crossing");
    }
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  double area(int n_nodes = 8192) const {
    return 0.5 * integrate_periodic([&](double phi) {
      const double r = radial_(phi);
      return r * r;
    }, n_nodes);
  }

  double diameter(int n_samples = 1024) const {
    std::vector<Vec2> pts(n_samples);
    for (int i = 0; i < n_samples; ++i) {
      const double phi = two_pi * i / n_samples;
      pts[i] = anchor_ + unit_vector(phi) * radial_(phi);
    }
    double best = 0.0;
    for (int i = 0; i < n_samples; ++i)
      for (int j = i + 1; j < n_samples; ++j) best = std::max(best, norm(pts[i] - pts[j]));
    return best;
  }

 private:
  Vec2 anchor_;
  std::function<double(double)> radial_;
  std::vector<double> corners_;
};

using ConvexDomain2 = std::variant<ConvexPolygon, Disk2, RadialDomain2>;

// ---------------------------------------------------------------------------
// 3D domains
// ---------------------------------------------------------------------------

struct Ball3 {
  Vec3 center;
  double radius;

  Ball3(Vec3 c, double r) : center(c), radius(r) {
    if (!(r > 0)) throw std::invalid_argument("Ball3: radius must be positive");
  }

  bool contains(Vec3 p, double slack = interior_slack) const {
    return norm(p - center) < radius - slack;
  }

  double ray_distance(Vec3 x0, Vec3 u) const {
    if (!contains(x0)) throw NotInteriorError();
    const Vec3 p = x0 - center;
    const double pu = dot(p, u);
    return -pu + std::sqrt(pu * pu - dot(p, p) + radius * radius);
  }
};

struct HalfSpace {
  Vec3 normal;   // unit outward normal
  double offset; // interior is n . x < offset
};

/// Bounded intersection of half-spaces with a strictly interior witness.
class Polytope3 {
 public:
  Polytope3(std::vector<HalfSpace> half_spaces, Vec3 witness)
      : faces_(std::move(half_spaces)), witness_(witness) {
    if (faces_.size() < 4) throw std::invalid_argument("Polytope3: need at least 4 half-spaces");
    for (auto& h : faces_) {
      const double n = norm(h.normal);
      if (n < 1e-14) throw std::invalid_argument("Polytope3: zero normal");
      h.normal = h.normal * (1.0 / n);
      h.offset /= n;
    }
    for (const auto& h : faces_)
      if (dot(h.normal, witness_) >= h.offset - 1e-12)
        throw std::invalid_argument("Polytope3: witness point is not strictly interior");
    // Boundedness: finite chord in 26 canonical directions from the witness.
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const Vec3 u = normalized({double(dx), double(dy), double(dz)});
          if (!std::isfinite(chord(witness_, u)))
            throw std::invalid_argument("Polytope3: unbounded (no boundary hit in a canonical direction)");
        }
  }

  const std::vector<HalfSpace>& half_spaces() const { return faces_; }
  Vec3 witness() const { return witness_; }

  bool contains(Vec3 p, double slack = interior_slack) const {
    for (const auto& h : faces_)
      if (dot(h.normal, p) >= h.offset - slack) return false;
    return true;
  }

  double ray_distance(Vec3 x0, Vec3 u) const {
    if (!contains(x0)) throw NotInteriorError();
    return chord(x0, u);
  }

  /// Vertices enumerated from half-space triples; used for diameter and the
  /// optimizer start point.
  std::vector<Vec3> enumerate_vertices() const {
    std::vector<Vec3> out;
    const std::size_t m = faces_.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          Vec3 p;
          if (!solve_three_planes(faces_[i], faces_[j], faces_[k], p)) continue;
          bool inside = true;
          for (const auto& h : faces_)
            if (dot(h.normal, p) > h.offset + 1e-9) {
              inside = false;
              break;
            }
          if (!inside) continue;
          bool dup = false;
          for (const Vec3& q : out)
            if (norm(p - q) < 1e-9) {
              dup = true;
              break;
            }
          if (!dup) out.push_back(p);
        }
    return out;
  }

  double diameter() const {
    const auto verts = enumerate_vertices();
    double best = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        best = std::max(best, norm(verts[i] - verts[j]));
    return best;
  }

 private:
  double chord(Vec3 x0, Vec3 u) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& h : faces_) {
      const double nu = dot(h.normal, u);
      if (nu > 1e-15) best = std::min(best, (h.offset - dot(h.normal, x0)) / nu);
    }
    return best;
  }

  static bool solve_three_planes(const HalfSpace& a, const HalfSpace& b, const HalfSpace& c, Vec3& out) {
    const Vec3 r0 = a.normal, r1 = b.normal, r2 = c.normal;
    const double det = dot(r0, cross(r1, r2));
    if (std::abs(det) < 1e-12) return false;
    out = (cross(r1, r2) * a.offset + cross(r2, r0) * b.offset + cross(r0, r1) * c.offset) * (1.0 / det);
    return true;
  }

  std::vector<HalfSpace> faces_;
  Vec3 witness_;
};

using ConvexDomain3 = std::variant<Ball3, Polytope3>;

// ---------------------------------------------------------------------------
// Variant dispatch
// ---------------------------------------------------------------------------

inline double ray_distance(const ConvexDomain2& d, Vec2 x0, double phi) {
  return std::visit([&](const auto& dom) { return dom.ray_distance(x0, phi); }, d);
}

inline bool contains(const ConvexDomain2& d, Vec2 p, double slack = interior_slack) {
  return std::visit([&](const auto& dom) { return dom.contains(p, slack); }, d);
}

inline double area2(const ConvexDomain2& d) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&d)) return poly->area();
  if (const auto* disk = std::get_if<Disk2>(&d)) return pi * disk->radius * disk->radius;
  return std::get<RadialDomain2>(d).area();
}

inline double diameter(const ConvexDomain2& d) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&d)) return poly->diameter();
  if (const auto* disk = std::get_if<Disk2>(&d)) return 2.0 * disk->radius;
  return std::get<RadialDomain2>(d).diameter();
}

inline double ray_distance(const ConvexDomain3& d, Vec3 x0, Vec3 u) {
  return std::visit([&](const auto& dom) { return dom.ray_distance(x0, u); }, d);
}

inline bool contains(const ConvexDomain3& d, Vec3 p, double slack = interior_slack) {
  return std::visit([&](const auto& dom) { return dom.contains(p, slack); }, d);
}

inline double diameter(const ConvexDomain3& d) {
  if (const auto* ball = std::get_if<Ball3>(&d)) return 2.0 * ball->radius;
  return std::get<Polytope3>(d).diameter();
}

/// Angles (about x0) where the 2D chord function has derivative kinks.
/// Empty for smooth boundaries.
inline std::vector<double> angular_breakpoints(const ConvexDomain2& d, Vec2 x0) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&d)) return poly->vertex_directions(x0);
  if (const auto* rad = std::get_if<RadialDomain2>(&d)) {
    if (norm(x0 - rad->anchor()) < 1e-12) return rad->corner_angles();
  }
  return {};
}

/// Deterministic interior seed: polygon area centroid, disk/ball center,
/// radial anchor, polytope vertex average.
inline Vec2 interior_seed(const ConvexDomain2& d) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&d)) return poly->centroid();
  if (const auto* disk = std::get_if<Disk2>(&d)) return disk->center;
  return std::get<RadialDomain2>(d).anchor();
}

inline Vec3 interior_seed(const ConvexDomain3& d) {
  if (const auto* ball = std::get_if<Ball3>(&d)) return ball->center;
  const auto verts = std::get<Polytope3>(d).enumerate_vertices();
  Vec3 acc{0, 0, 0};
  for (const Vec3& v : verts) acc = acc + v;
  return verts.empty() ? std::get<Polytope3>(d).witness() : acc * (1.0 / verts.size());
}

// ---------------------------------------------------------------------------
// Hausdorff distance between convex polygons (filled sets)
// ---------------------------------------------------------------------------

namespace detail {

inline double point_to_polygon(Vec2 p, const ConvexPolygon& poly) {
  if (poly.contains(p, 0.0)) return 0.0;
  const auto& vs = poly.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec2 a = vs[i], e = vs[(i + 1) % vs.size()] - a;
    const double s = std::clamp(dot(p - a, e) / norm2(e), 0.0, 1.0);
    best = std::min(best, norm(p - (a + e * s)));
  }
  return best;
}

inline double directed_hausdorff(const ConvexPolygon& from, const ConvexPolygon& to,
                                 int samples_per_edge) {
  const auto& vs = from.vertices();
  double best = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec2 a = vs[i], b = vs[(i + 1) % vs.size()];
    for (int s = 0; s < samples_per_edge; ++s) {
      const Vec2 p = a + (b - a) * (double(s) / samples_per_edge);
      best = std::max(best, point_to_polygon(p, to));
    }
  }
  return best;
}

}  // namespace detail

/// Hausdorff distance via vertices plus densified edge samples.
inline double hausdorff2(const ConvexPolygon& a, const ConvexPolygon& b,
                         int samples_per_edge = 64) {
  return std::max(detail::directed_hausdorff(a, b, samples_per_edge),
                  detail::directed_hausdorff(b, a, samples_per_edge));
}

}  // namespace vario
