#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support.hpp"
#include "vario/domain_io.hpp"
#include "vario/domains.hpp"

using namespace vario;
using testsupport::example_quadrilateral;
using testsupport::unit_square;

namespace {

double boundary_residual(const ConvexDomain2& d, Vec2 p) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&d)) {
    const auto& vs = poly->vertices();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Vec2 a = vs[i], e = vs[(i + 1) % vs.size()] - a;
      const double s = std::clamp(dot(p - a, e) / norm2(e), 0.0, 1.0);
      best = std::min(best, norm(p - (a + e * s)));
    }
    return best;
  }
  const auto& disk = std::get<Disk2>(d);
  return std::abs(norm(p - disk.center) - disk.radius);
}

}  // namespace

TEST_CASE("polygon construction invariants") {
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), std::invalid_argument);
  // clockwise
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument);
  // repeated vertex
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), std::invalid_argument);
  // collinear (not strictly convex)
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), std::invalid_argument);
  CHECK_NOTHROW(ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST_CASE("disk chord closed form") {
  ConvexDomain2 disk{Disk2({0, 0}, 1.0)};
  CHECK(ray_distance(disk, {0.5, 0}, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (int i = 0; i < 32; ++i) {
    const double phi = two_pi * i / 32;
    const double expect = -0.5 * std::cos(phi) + std::sqrt(1.0 - 0.25 * std::sin(phi) * std::sin(phi));
    CHECK(ray_distance(disk, {0.5, 0}, phi) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("square chords") {
  ConvexDomain2 sq{unit_square()};
  CHECK(ray_distance(sq, {0.5, 0.5}, 0.25 * pi) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK(ray_distance(sq, {0.5, 0.5}, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ray_distance(sq, {0.5, 0.5}, pi) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("ray from a non-interior point is rejected") {
  ConvexDomain2 disk{Disk2({0, 0}, 1.0)};
  CHECK_THROWS_AS(ray_distance(disk, {1.0, 0.0}, 0.0), NotInteriorError);
  CHECK_THROWS_AS(ray_distance(disk, {1.5, 0.0}, 0.0), NotInteriorError);
  ConvexDomain2 sq{unit_square()};
  CHECK_THROWS_AS(ray_distance(sq, {0.0, 0.5}, 0.0), NotInteriorError);
  CHECK_THROWS_AS(ray_distance(sq, {-0.2, 0.5}, 0.0), NotInteriorError);
}

TEST_CASE("ray hit lands on the boundary") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> ua(0.0, two_pi);
  for (int t = 0; t < 10; ++t) {
    ConvexDomain2 poly{testsupport::random_convex_polygon(rng)};
    const Vec2 z = testsupport::random_interior_point(poly, rng);
    for (int i = 0; i < 16; ++i) {
      const double phi = ua(rng);
      const double d = ray_distance(poly, z, phi);
      CHECK(boundary_residual(poly, z + unit_vector(phi) * d) <= 1e-10);
      // single crossing: beyond the hit the ray stays outside
      for (double extra : {1e-6, 1e-3, 0.1})
        CHECK_FALSE(contains(poly, z + unit_vector(phi) * (d * (1.0 + extra) + extra)));
    }
  }
}

TEST_CASE("areas") {
  CHECK(unit_square().area() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(example_quadrilateral().area() == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(area2(ConvexDomain2{Disk2({3, -2}, 1.0)}) == doctest::Approx(pi).epsilon(1e-15));
  // radial-function domain: unit circle about an interior anchor
  RadialDomain2 circle({0.3, 0.0}, [](double phi) {
    return -0.3 * std::cos(phi) + std::sqrt(1.0 - 0.09 * std::sin(phi) * std::sin(phi));
  });
  CHECK(circle.area() == doctest::Approx(pi).epsilon(1e-10));
}

TEST_CASE("diameters") {
  CHECK(unit_square().diameter() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(diameter(ConvexDomain2{Disk2({1, 1}, 3.0)}) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(example_quadrilateral().diameter() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(diameter(ConvexDomain3{testsupport::axis_cube()}) ==
        doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("hausdorff distance") {
  const auto sq = unit_square();
  CHECK(hausdorff2(sq, sq) == 0.0);
  const ConvexPolygon shifted({{0.1, 0}, {1.1, 0}, {1.1, 1}, {0.1, 1}});
  CHECK(hausdorff2(sq, shifted) == doctest::Approx(0.1).epsilon(1e-9));
  const auto p64 = testsupport::regular_polygon(64);
  const auto p128 = testsupport::regular_polygon(128);
  const double sagitta = 1.0 - std::cos(pi / 64);
  const double h = hausdorff2(p64, p128);
  CHECK(h <= sagitta + 1e-9);
  CHECK(h == doctest::Approx(sagitta).epsilon(1e-3));
}

TEST_CASE("isometry covariance of chords") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ua(0.0, two_pi), ut(-3.0, 3.0);
  for (int t = 0; t < 8; ++t) {
    const auto poly = testsupport::random_convex_polygon(rng);
    const ConvexDomain2 dom{poly};
    const Vec2 z = testsupport::random_interior_point(dom, rng);
    const double rot = ua(rng);
    const Vec2 shift{ut(rng), ut(rng)};
    std::vector<Vec2> moved;
    for (Vec2 v : poly.vertices()) moved.push_back(rotate(v, rot) + shift);
    const ConvexDomain2 dom2{ConvexPolygon(moved)};
    const Vec2 z2 = rotate(z, rot) + shift;
    for (int i = 0; i < 12; ++i) {
      const double phi = ua(rng);
      CHECK(ray_distance(dom2, z2, phi + rot) ==
            doctest::Approx(ray_distance(dom, z, phi)).epsilon(1e-10));
    }
  }
}

TEST_CASE("chords scale exactly under dilation") {
  const auto quad = example_quadrilateral();
  std::vector<Vec2> scaled;
  const double c = 2.5;
  for (Vec2 v : quad.vertices()) scaled.push_back(v * c);
  const ConvexDomain2 dom{quad}, dom2{ConvexPolygon(scaled)};
  const Vec2 z{0.3, -0.2};
  for (int i = 0; i < 16; ++i) {
    const double phi = two_pi * i / 16;
    CHECK(ray_distance(dom2, z * c, phi) == doctest::Approx(c * ray_distance(dom, z, phi)).epsilon(1e-14));
  }
}

TEST_CASE("ball chords") {
  ConvexDomain3 ball{Ball3({0, 0, 0}, 1.0)};
  CHECK(ray_distance(ball, {0.5, 0, 0}, {1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ray_distance(ball, {0.5, 0, 0}, {-1, 0, 0}) == doctest::Approx(1.5).epsilon(1e-15));
  const Vec3 u = normalized({0, 1, 1});
  const double d = ray_distance(ball, {0.5, 0, 0}, u);
  CHECK(norm(Vec3{0.5, 0, 0} + u * d) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("polytope construction and chords") {
  const auto cube = testsupport::axis_cube();
  ConvexDomain3 dom{cube};
  CHECK(ray_distance(dom, {0, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
  const Vec3 diag = normalized({1, 1, 1});
  CHECK(ray_distance(dom, {0, 0, 0}, diag) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(cube.enumerate_vertices().size() == 8);

  // missing face -> unbounded
  CHECK_THROWS_AS(Polytope3({{{1, 0, 0}, 1},
                             {{-1, 0, 0}, 1},
                             {{0, 1, 0}, 1},
                             {{0, -1, 0}, 1},
                             {{0, 0, 1}, 1}},
                            {0, 0, 0}),
                  std::invalid_argument);
  // witness outside
  CHECK_THROWS_AS(Polytope3({{{1, 0, 0}, 1},
                             {{-1, 0, 0}, 1},
                             {{0, 1, 0}, 1},
                             {{0, -1, 0}, 1},
                             {{0, 0, 1}, 1},
                             {{0, 0, -1}, 1}},
                            {2, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("radial domain ray casting") {
  // comparison-style star domain, evaluated away from the anchor
  RadialDomain2 star({0, 0}, [](double phi) { return 1.0 + 0.2 * std::cos(3.0 * phi); });
  CHECK(star.ray_distance({0, 0}, 0.0) == doctest::Approx(1.2).epsilon(1e-12));
  const double d = star.ray_distance({0.2, 0.1}, 0.7);
  const Vec2 hit = Vec2{0.2, 0.1} + unit_vector(0.7) * d;
  const double rho = star.radial(std::atan2(hit.y, hit.x));
  CHECK(norm(hit) == doctest::Approx(rho).epsilon(1e-10));
  CHECK_THROWS_AS(star.ray_distance({2.0, 0.0}, 0.0), NotInteriorError);
}

TEST_CASE("spherical direction convention") {
  // (phi, theta) = (0,0) points along +x; phi is the polar angle off +x
  const Vec3 ex = unit_vector(SphericalDirection{0.0, 0.0});
  CHECK(norm(ex - Vec3{1, 0, 0}) <= 1e-15);
  const Vec3 ey = unit_vector(SphericalDirection{0.5 * pi, 0.0});
  CHECK(norm(ey - Vec3{0, 1, 0}) <= 1e-15);
  const Vec3 ez = unit_vector(SphericalDirection{0.5 * pi, 0.5 * pi});
  CHECK(norm(ez - Vec3{0, 0, 1}) <= 1e-15);
  const Vec3 mx = unit_vector(SphericalDirection{pi, 2.2});
  CHECK(norm(mx - Vec3{-1, 0, 0}) <= 1e-15);
}

TEST_CASE("minimal rotation to the x axis") {
  for (Vec3 dir : {Vec3{0, 0, 1}, Vec3{0, -1, 0}, normalized({1, 2, 3}), Vec3{-1, 0, 0}}) {
    const Mat3 r = rotation_to_x_axis(dir);
    CHECK(norm(r.apply(dir) - Vec3{1, 0, 0}) <= 1e-14);
    // orthogonality: applying then transposing is the identity
    const Vec3 probe{0.3, -0.8, 0.52};
    CHECK(norm(r.apply_transposed(r.apply(probe)) - probe) <= 1e-14);
  }
}

TEST_CASE("domain files round-trip") {
  const auto j = nlohmann::json::parse(R"({"type":"polygon","vertices":[[2,-1],[1,1],[-1,1],[-2,-1]]})");
  const auto dom = parse_domain(j);
  const auto* d2 = std::get_if<ConvexDomain2>(&dom);
  REQUIRE(d2 != nullptr);
  CHECK(area2(*d2) == doctest::Approx(6.0));
  CHECK(domain_to_json(*d2) == j);

  const auto jb = nlohmann::json::parse(R"({"type":"ball","center":[1,2,3],"radius":0.5})");
  const auto domb = parse_domain(jb);
  const auto* d3 = std::get_if<ConvexDomain3>(&domb);
  REQUIRE(d3 != nullptr);
  CHECK(domain_to_json(*d3) == jb);

  const auto jp = nlohmann::json::parse(
      R"({"type":"polytope","halfspaces":[{"n":[1,0,0],"c":1},{"n":[-1,0,0],"c":1},{"n":[0,1,0],"c":1},{"n":[0,-1,0],"c":1},{"n":[0,0,1],"c":1},{"n":[0,0,-1],"c":1}],"witness":[0,0,0]})");
  const auto domp = parse_domain(jp);
  CHECK(diameter(std::get<ConvexDomain3>(domp)) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-9));

  CHECK_THROWS(parse_domain(nlohmann::json::parse(R"({"type":"pentachoron"})")));
  CHECK_THROWS(parse_domain(nlohmann::json::parse(R"({"type":"disk","center":[0,0],"radius":-1})")));
}
