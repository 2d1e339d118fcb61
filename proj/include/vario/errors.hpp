#pragma once

#include <stdexcept>
#include <string>

namespace vario {

/// Thrown when a query point is on or outside the domain boundary.
struct NotInteriorError : std::runtime_error {
  explicit NotInteriorError(const std::string& what = "point not interior")
      : std::runtime_error(what) {}
};

/// Thrown by annulus_threshold when F(., eps) never becomes positive.
struct NoSignChangeError : std::runtime_error {
  explicit NoSignChangeError(const std::string& what = "no sign change")
      : std::runtime_error(what) {}
};

/// Thrown by near-boundary probes when the nearest boundary point is
/// ambiguous and no direction was supplied.
struct AmbiguousNearestPointError : std::runtime_error {
  explicit AmbiguousNearestPointError(const std::string& what = "nearest boundary point not unique")
      : std::runtime_error(what) {}
};

}  // namespace vario
