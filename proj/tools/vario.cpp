// vario: boundary-distance variance toolkit CLI.
//
// Subcommands: stats, field, variocentre, deriv, asymptotics, oracle-check.
// Exit codes: 0 success, 2 usage/parse error, 3 point not interior,
// 4 optimizer did not converge, 5 oracle suites failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vario/asymptotics.hpp"
#include "vario/boundary_stats.hpp"
#include "vario/derivatives.hpp"
#include "vario/domain_io.hpp"
#include "vario/field.hpp"
#include "vario/oracle_check.hpp"
#include "vario/variocentre.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_not_interior = 3;
constexpr int exit_no_convergence = 4;
constexpr int exit_suite_failure = 5;

std::vector<double> parse_csv_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
    out.push_back(v);
  }
  return out;
}

struct CommonOptions {
  std::string domain_path;
  std::string point;
  std::string sigma;
  std::string grid = "64,48";
  std::string deltas;
  std::string out_path;
  std::string format = "csv";
  int n_nodes = 4096;
  int n_phi = 512;
  int n_theta = 512;
  double tol = 1e-8;
  double eps = -1.0;
};

std::string join_g12(const std::vector<double>& vals) {
  std::string row;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) row += ',';
    row += vario::format_g12(vals[i]);
  }
  return row;
}

int cmd_stats(const CommonOptions& opt) {
  const auto domain = vario::load_domain_file(opt.domain_path);
  const auto coords = parse_csv_numbers(opt.point);
  if (const auto* d2 = std::get_if<vario::ConvexDomain2>(&domain)) {
    if (coords.size() != 2) throw std::invalid_argument("--point needs x,y for a 2D domain");
    const auto s = vario::stats2(*d2, {coords[0], coords[1]}, opt.n_nodes);
    std::cout << join_g12({coords[0], coords[1], s.i1, s.i2, s.variance}) << '\n';
  } else {
    if (coords.size() != 3) throw std::invalid_argument("--point needs x,y,z for a 3D domain");
    const auto& d3 = std::get<vario::ConvexDomain3>(domain);
    const auto s = vario::stats3(d3, {coords[0], coords[1], coords[2]}, opt.n_phi, opt.n_theta);
    std::cout << join_g12({coords[0], coords[1], coords[2], s.i1, s.i2, s.variance}) << '\n';
  }
  return exit_ok;
}

int cmd_field(const CommonOptions& opt) {
  const auto domain = vario::load_domain_file(opt.domain_path);
  const auto* d2 = std::get_if<vario::ConvexDomain2>(&domain);
  if (!d2) throw std::invalid_argument("field requires a 2D domain");
  const auto grid_dims = parse_csv_numbers(opt.grid);
  if (grid_dims.size() != 2) throw std::invalid_argument("--grid needs NX,NY");
  const int nx = static_cast<int>(grid_dims[0]), ny = static_cast<int>(grid_dims[1]);

  const auto grid = vario::compute_variance_field(*d2, nx, ny, opt.n_nodes);

  const bool want_csv = opt.format == "csv" || opt.format == "both";
  const bool want_pgm = opt.format == "pgm" || opt.format == "both";
  if (!want_csv && !want_pgm) throw std::invalid_argument("--format must be csv, pgm or both");
  if (want_pgm && opt.out_path.empty())
    throw std::invalid_argument("--out is required for pgm output");

  if (want_csv) {
    if (opt.out_path.empty()) {
      vario::write_field_csv(std::cout, grid);
    } else {
      const std::string path = opt.format == "both" ? opt.out_path + ".csv" : opt.out_path;
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + path);
      vario::write_field_csv(out, grid);
    }
  }
  if (want_pgm) {
    const std::string path = opt.format == "both" ? opt.out_path + ".pgm" : opt.out_path;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    const std::string img = vario::render_pgm(grid);
    out.write(img.data(), static_cast<std::streamsize>(img.size()));
  }
  return exit_ok;
}

int cmd_variocentre(const CommonOptions& opt) {
  const auto domain = vario::load_domain_file(opt.domain_path);
  if (const auto* d2 = std::get_if<vario::ConvexDomain2>(&domain)) {
    const auto r = vario::find_variocentre_2d(*d2, opt.tol, 500, opt.n_nodes);
    std::cout << join_g12({r.location.x, r.location.y, r.min_variance, r.residual,
                           double(r.iterations)})
              << ',' << (r.converged ? "true" : "false") << '\n';
    return r.converged ? exit_ok : exit_no_convergence;
  }
  const auto& d3 = std::get<vario::ConvexDomain3>(domain);
  const auto r = vario::find_min_variance_3d(d3, opt.tol, 500, opt.n_phi, opt.n_theta);
  std::cout << join_g12({r.location.x, r.location.y, r.location.z, r.min_variance,
                         r.gradient_norm, double(r.iterations)})
            << ',' << (r.converged ? "true" : "false") << '\n';
  return r.converged ? exit_ok : exit_no_convergence;
}

int cmd_deriv(const CommonOptions& opt) {
  const auto domain = vario::load_domain_file(opt.domain_path);
  const auto coords = parse_csv_numbers(opt.point);
  const auto dir = parse_csv_numbers(opt.sigma);
  if (const auto* d2 = std::get_if<vario::ConvexDomain2>(&domain)) {
    if (coords.size() != 2 || dir.size() != 1)
      throw std::invalid_argument("2D deriv needs --point x,y and --sigma angle");
    const vario::Vec2 z{coords[0], coords[1]};
    const double s = dir[0];
    std::cout << join_g12({z.x, z.y, s, vario::d1_i1_2d(*d2, z, s, opt.n_nodes).value,
                           vario::d2_i1_2d(*d2, z, s, opt.n_nodes).value,
                           vario::d1_v_2d(*d2, z, s, opt.n_nodes).value})
              << '\n';
    return exit_ok;
  }
  if (coords.size() != 3 || dir.size() != 2)
    throw std::invalid_argument("3D deriv needs --point x,y,z and --sigma phi,theta");
  const auto& d3 = std::get<vario::ConvexDomain3>(domain);
  const vario::Vec3 x0{coords[0], coords[1], coords[2]};
  const vario::SphericalDirection sd{dir[0], dir[1]};
  std::cout << join_g12({x0.x, x0.y, x0.z, sd.phi, sd.theta,
                         vario::d1_v_3d(d3, x0, sd, opt.n_phi, opt.n_theta).value})
            << '\n';
  return exit_ok;
}

int cmd_asymptotics(const CommonOptions& opt) {
  if (opt.eps >= 0.0) {
    std::cout << vario::format_g12(opt.eps) << ','
              << vario::format_g12(vario::annulus_threshold(opt.eps)) << '\n';
    return exit_ok;
  }
  const auto domain = vario::load_domain_file(opt.domain_path);
  const auto coords = parse_csv_numbers(opt.point);
  if (const auto* d2 = std::get_if<vario::ConvexDomain2>(&domain)) {
    if (coords.size() != 2) throw std::invalid_argument("--point needs x,y for a 2D domain");
    std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    if (!opt.deltas.empty()) deltas = parse_csv_numbers(opt.deltas);
    const auto probe =
        vario::near_boundary_probe_2d(*d2, {coords[0], coords[1]}, deltas, opt.n_nodes);
    for (std::size_t i = 0; i < probe.deltas.size(); ++i)
      std::cout << join_g12({probe.deltas[i], probe.slopes[i], probe.ratios[i],
                             probe.lower_bounds[i]})
                << '\n';
    return exit_ok;
  }
  if (coords.size() != 3) throw std::invalid_argument("--point needs x,y,z for a 3D domain");
  const auto& d3 = std::get<vario::ConvexDomain3>(domain);
  std::vector<double> deltas{1e-2, 1e-3};
  if (!opt.deltas.empty()) deltas = parse_csv_numbers(opt.deltas);
  const auto probe = vario::near_boundary_probe_3d(d3, {coords[0], coords[1], coords[2]}, deltas,
                                                   opt.n_phi, opt.n_theta);
  for (std::size_t i = 0; i < probe.deltas.size(); ++i)
    std::cout << join_g12({probe.deltas[i], probe.slopes[i], probe.ratios[i],
                           probe.lower_bounds[i]})
              << '\n';
  return exit_ok;
}

int cmd_oracle_check(const std::vector<std::string>& suites, const CommonOptions& opt) {
  std::vector<std::string> names = suites.empty() ? vario::oracle_suite_names() : suites;
  std::vector<std::string> failing;
  std::printf("%-10s %-14s %-10s %s\n", "suite", "max_deviation", "tolerance", "status");
  for (const auto& name : names) {
    const auto r = vario::run_oracle_suite(name, opt.n_nodes, opt.n_phi, opt.n_theta);
    std::printf("%-10s %-14.3e %-10.0e %s\n", r.name.c_str(), r.max_deviation, r.tolerance,
                r.pass ? "pass" : "FAIL");
    if (!r.pass) failing.push_back(r.name);
  }
  if (!failing.empty()) {
    std::string msg = "failing suites:";
    for (const auto& f : failing) msg += " " + f;
    std::fprintf(stderr, "%s\n", msg.c_str());
    return exit_suite_failure;
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary-distance variance toolkit"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::vector<std::string> suites;

  auto add_common = [&](CLI::App* cmd, bool needs_domain) {
    auto* d = cmd->add_option("--domain", opt.domain_path, "domain description JSON file");
    if (needs_domain) d->required();
    cmd->add_option("--nodes", opt.n_nodes, "2D angular quadrature nodes");
    cmd->add_option("--nphi", opt.n_phi, "3D polar nodes");
    cmd->add_option("--ntheta", opt.n_theta, "3D azimuthal nodes");
    cmd->add_option("--tol", opt.tol, "optimizer tolerance");
  };

  auto* stats = app.add_subcommand("stats", "boundary-distance statistics at a point");
  add_common(stats, true);
  stats->add_option("--point", opt.point, "evaluation point x,y[,z]")->required();

  auto* field = app.add_subcommand("field", "variance field over a grid (CSV and/or PGM)");
  add_common(field, true);
  field->add_option("--grid", opt.grid, "grid size NX,NY");
  field->add_option("--out", opt.out_path, "output path");
  field->add_option("--format", opt.format, "csv | pgm | both");

  auto* vc = app.add_subcommand("variocentre", "locate the variance minimizer");
  add_common(vc, true);

  auto* deriv = app.add_subcommand("deriv", "directional derivatives at a point");
  add_common(deriv, true);
  deriv->add_option("--point", opt.point, "evaluation point x,y[,z]")->required();
  deriv->add_option("--sigma", opt.sigma, "direction: angle (2D) or phi,theta (3D)")->required();

  auto* asym = app.add_subcommand("asymptotics", "near-boundary probe or annulus threshold");
  add_common(asym, false);
  asym->add_option("--point", opt.point, "probe point x,y[,z]");
  asym->add_option("--deltas", opt.deltas, "comma-separated decreasing deltas");
  asym->add_option("--eps", opt.eps, "annulus width; prints r(eps) instead of probing");

  auto* oracle = app.add_subcommand("oracle-check", "run oracle-equivalence suites");
  add_common(oracle, false);
  oracle->add_option("suites", suites, "suite names (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (stats->parsed()) return cmd_stats(opt);
    if (field->parsed()) return cmd_field(opt);
    if (vc->parsed()) return cmd_variocentre(opt);
    if (deriv->parsed()) return cmd_deriv(opt);
    if (asym->parsed()) return cmd_asymptotics(opt);
    if (oracle->parsed()) return cmd_oracle_check(suites, opt);
  } catch (const vario::NotInteriorError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_not_interior;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  }
  return exit_usage;
}
