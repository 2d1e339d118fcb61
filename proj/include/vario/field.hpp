#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "vario/boundary_stats.hpp"
#include "vario/domains.hpp"

namespace vario {

/// printf %.12g formatting; the CSV number format throughout.
inline std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct BoundingBox2 {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

inline BoundingBox2 bounding_box(const ConvexDomain2& d) {
  BoundingBox2 box;
  if (const auto* poly = std::get_if<ConvexPolygon>(&d)) {
    box = {poly->vertices()[0].x, poly->vertices()[0].x, poly->vertices()[0].y, poly->vertices()[0].y};
    for (const Vec2& v : poly->vertices()) {
      box.xmin = std::min(box.xmin, v.x);
      box.xmax = std::max(box.xmax, v.x);
      box.ymin = std::min(box.ymin, v.y);
      box.ymax = std::max(box.ymax, v.y);
    }
  } else if (const auto* disk = std::get_if<Disk2>(&d)) {
    box = {disk->center.x - disk->radius, disk->center.x + disk->radius,
           disk->center.y - disk->radius, disk->center.y + disk->radius};
  } else {
    const auto& rad = std::get<RadialDomain2>(d);
    box = {rad.anchor().x, rad.anchor().x, rad.anchor().y, rad.anchor().y};
    for (int i = 0; i < 1024; ++i) {
      const double phi = two_pi * i / 1024;
      const Vec2 p = rad.anchor() + unit_vector(phi) * rad.radial(phi);
      box.xmin = std::min(box.xmin, p.x);
      box.xmax = std::max(box.xmax, p.x);
      box.ymin = std::min(box.ymin, p.y);
      box.ymax = std::max(box.ymax, p.y);
    }
  }
  return box;
}

/// Variance sampled at the cell centers of an nx-by-ny grid over the
/// domain's bounding box. Exterior cells hold NaN. Values are stored
/// row-major from the bottom row (ymin) up.
struct FieldGrid {
  int nx = 0, ny = 0;
  BoundingBox2 box;
  std::vector<double> values;

  double cell_x(int i) const { return box.xmin + (i + 0.5) * (box.xmax - box.xmin) / nx; }
  double cell_y(int j) const { return box.ymin + (j + 0.5) * (box.ymax - box.ymin) / ny; }
  double at(int i, int j) const { return values[std::size_t(j) * nx + i]; }
};

inline int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("VARIO_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

inline FieldGrid compute_variance_field(const ConvexDomain2& domain, int nx, int ny,
                                        int n_nodes = 4096) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("compute_variance_field: grid counts must be >= 2");
  FieldGrid grid;
  grid.nx = nx;
  grid.ny = ny;
  grid.box = bounding_box(domain);
  grid.values.assign(std::size_t(nx) * ny, std::numeric_limits<double>::quiet_NaN());

  const int n_threads = std::min(thread_budget(), ny);
  auto worker = [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j)
      for (int i = 0; i < nx; ++i) {
        const Vec2 p{grid.cell_x(i), grid.cell_y(j)};
        if (contains(domain, p)) grid.values[std::size_t(j) * nx + i] = stats2(domain, p, n_nodes).variance;
      }
  };
  if (n_threads <= 1) {
    worker(0, ny);
  } else {
    std::vector<std::thread> pool;
    const int rows = (ny + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back(worker, t * rows, std::min(ny, (t + 1) * rows));
    for (auto& th : pool) th.join();
  }
  return grid;
}

/// CSV rows "x,y,variance" for the interior grid points only, bottom row
/// first, 12 significant digits.
inline void write_field_csv(std::ostream& out, const FieldGrid& grid) {
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double v = grid.at(i, j);
      if (std::isnan(v)) continue;
      out << format_g12(grid.cell_x(i)) << ',' << format_g12(grid.cell_y(j)) << ','
          << format_g12(v) << '\n';
    }
}

/// Binary PGM (P5) image of the field: minimum variance black, maximum
/// white, exterior mid-gray 128. Top image row is the top of the domain.
inline std::string render_pgm(const FieldGrid& grid) {
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -std::numeric_limits<double>::infinity();
  for (double v : grid.values)
    if (!std::isnan(v)) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  const double span = vmax - vmin;
  std::string img = "P5\n" + std::to_string(grid.nx) + " " + std::to_string(grid.ny) + "\n255\n";
  img.reserve(img.size() + std::size_t(grid.nx) * grid.ny);
  for (int j = grid.ny - 1; j >= 0; --j)
    for (int i = 0; i < grid.nx; ++i) {
      const double v = grid.at(i, j);
      unsigned char g = 128;
      if (!std::isnan(v)) g = span > 0 ? static_cast<unsigned char>(std::lround(255.0 * (v - vmin) / span)) : 0;
      img.push_back(static_cast<char>(g));
    }
  return img;
}

}  // namespace vario
