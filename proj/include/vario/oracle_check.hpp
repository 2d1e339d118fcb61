#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vario/asymptotics.hpp"
#include "vario/boundary_stats.hpp"
#include "vario/elliptic.hpp"

namespace vario {

struct OracleSuiteResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Oracle-equivalence suites: quadrature against the closed forms, and the
/// annulus function against its two independent evaluation routes.
///   disk    — stats2 on the unit disk vs 1 - 4E(r)^2/pi^2     (tol 1e-8)
///   ball    — stats3 on the unit ball vs the Example closed forms (1e-7)
///   annulus — annulus_F(r,0) vs plain AGM difference and the
///             double-factorial series                          (1e-10)
inline OracleSuiteResult run_oracle_suite(const std::string& name, int n_nodes = 4096,
                                          int n_phi = 512, int n_theta = 512) {
  OracleSuiteResult res;
  res.name = name;
  if (name == "disk") {
    res.tolerance = 1e-8;
    ConvexDomain2 disk{Disk2({0, 0}, 1.0)};
    for (int k = 0; k <= 9; ++k) {
      const double r = 0.1 * k;
      const double quad = stats2(disk, {r, 0}, n_nodes).variance;
      res.max_deviation = std::max(res.max_deviation, std::abs(quad - disk_variance_oracle(r)));
    }
  } else if (name == "ball") {
    res.tolerance = 1e-7;
    ConvexDomain3 ball{Ball3({0, 0, 0}, 1.0)};
    for (int k = 0; k <= 9; ++k) {
      const double r = 0.1 * k;
      const auto quad = stats3(ball, {r, 0, 0}, n_phi, n_theta);
      const auto oracle = ball_stats_oracle(r);
      res.max_deviation = std::max({res.max_deviation, std::abs(quad.i1 - oracle.i1),
                                    std::abs(quad.i2 - oracle.i2)});
    }
  } else if (name == "annulus") {
    res.tolerance = 1e-10;
    for (int k = 1; k <= 18; ++k) {
      const double r = 0.05 * k;
      const double f = annulus_F(r, 0.0);
      const double agm_route = 4.0 / r * (ellip_K(r) - ellip_E(r));
      // independent series accumulation
      double sum = 0.0, coef = 0.25, rp = r * r;
      for (int n = 1; n <= 400; ++n) {
        const double term = coef * (2.0 * n / (2.0 * n - 1.0)) * rp;
        sum += term;
        const double f2 = (2.0 * n + 1.0) / (2.0 * n + 2.0);
        coef *= f2 * f2;
        rp *= r * r;
        if (term < 1e-19) break;
      }
      const double series_route = 2.0 * pi / r * sum;
      res.max_deviation = std::max({res.max_deviation, std::abs(f - agm_route), std::abs(f - series_route)});
    }
  } else {
    throw std::invalid_argument("unknown oracle suite: " + name);
  }
  res.pass = res.max_deviation <= res.tolerance;
  return res;
}

inline const std::vector<std::string>& oracle_suite_names() {
  static const std::vector<std::string> names{"disk", "ball", "annulus"};
  return names;
}

}  // namespace vario
