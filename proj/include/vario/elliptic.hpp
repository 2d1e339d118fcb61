#pragma once

#include <cmath>
#include <stdexcept>

#include "vario/geometry.hpp"

namespace vario {

namespace detail {

// Arithmetic-geometric mean iteration. Returns the common limit of
// a_{n+1} = (a_n+b_n)/2, b_{n+1} = sqrt(a_n b_n) and accumulates
// sum_n 2^{n-1} c_n^2 with c_n = (a_n - b_n)/2, which feeds E(k).
struct AgmResult {
  double agm;
  double c_sum;
};

inline AgmResult agm_with_c_sum(double a, double b, double c0) {
  double c_sum = 0.5 * c0 * c0;
  double pow2 = 1.0;  // 2^{n-1} for n = 1 at first update
  for (int n = 0; n < 64; ++n) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    const double cn = 0.5 * (a - b);
    c_sum += pow2 * cn * cn;
    pow2 *= 2.0;
    a = an;
    b = bn;
    if (std::abs(cn) < 1e-18 * a) break;
  }
  return {a, c_sum};
}

}  // namespace detail

/// Complete elliptic integral of the first kind, modulus convention:
/// K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta), 0 <= k < 1.
inline double ellip_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::domain_error("ellip_K: k must lie in [0,1)");
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  const auto r = detail::agm_with_c_sum(1.0, kp, k);
  return pi / (2.0 * r.agm);
}

/// Complete elliptic integral of the second kind,
/// E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 theta) dtheta, 0 <= k <= 1.
inline double ellip_E(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw std::domain_error("ellip_E: k must lie in [0,1]");
  if (k == 1.0) return 1.0;
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  const auto r = detail::agm_with_c_sum(1.0, kp, k);
  const double big_k = pi / (2.0 * r.agm);
  return big_k * (1.0 - r.c_sum);
}

/// K(k) - E(k) evaluated without cancellation for small k via the
/// double-factorial series
///   K - E = (pi/2) sum_{n>=1} ((2n-1)!!/(2n)!!)^2 (2n/(2n-1)) k^{2n},
/// switching to the AGM difference where the two quantities are comparable.
/// The squared double-factorial ratio is updated multiplicatively.
inline double ellip_K_minus_E(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::domain_error("ellip_K_minus_E: k must lie in [0,1)");
  if (k > 0.75) return ellip_K(k) - ellip_E(k);
  const double k2 = k * k;
  double ratio_sq = 0.25;  // ((2n-1)!!/(2n)!!)^2 at n = 1
  double k_pow = k2;
  double sum = ratio_sq * 2.0 * k_pow;
  for (int n = 2; n < 400; ++n) {
    const double f = (2.0 * n - 1.0) / (2.0 * n);
    ratio_sq *= f * f;
    k_pow *= k2;
    const double term = ratio_sq * (2.0 * n / (2.0 * n - 1.0)) * k_pow;
    sum += term;
    if (term < 1e-18 * (sum + 1e-300)) break;
  }
  return 0.5 * pi * sum;
}

}  // namespace vario
