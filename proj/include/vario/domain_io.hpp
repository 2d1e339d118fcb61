#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "vario/domains.hpp"

namespace vario {

using AnyDomain = std::variant<ConvexDomain2, ConvexDomain3>;

/// Parse a domain description:
///   {"type":"polygon","vertices":[[x,y],...]}
///   {"type":"disk","center":[x,y],"radius":r}
///   {"type":"ball","center":[x,y,z],"radius":r}
///   {"type":"polytope","halfspaces":[{"n":[a,b,c],"c":d},...],"witness":[x,y,z]}
inline AnyDomain parse_domain(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "polygon") {
    std::vector<Vec2> verts;
    for (const auto& v : j.at("vertices"))
      verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return ConvexDomain2{ConvexPolygon(std::move(verts))};
  }
  if (type == "disk") {
    const auto& c = j.at("center");
    return ConvexDomain2{Disk2({c.at(0).get<double>(), c.at(1).get<double>()},
                               j.at("radius").get<double>())};
  }
  if (type == "ball") {
    const auto& c = j.at("center");
    return ConvexDomain3{Ball3({c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()},
                               j.at("radius").get<double>())};
  }
  if (type == "polytope") {
    std::vector<HalfSpace> faces;
    for (const auto& h : j.at("halfspaces")) {
      const auto& n = h.at("n");
      faces.push_back({{n.at(0).get<double>(), n.at(1).get<double>(), n.at(2).get<double>()},
                       h.at("c").get<double>()});
    }
    const auto& w = j.at("witness");
    return ConvexDomain3{Polytope3(std::move(faces),
                                   {w.at(0).get<double>(), w.at(1).get<double>(), w.at(2).get<double>()})};
  }
  throw std::runtime_error("unknown domain type: " + type);
}

inline AnyDomain load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open domain file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_domain(j);
}

inline nlohmann::json domain_to_json(const ConvexDomain2& d) {
  nlohmann::json j;
  if (const auto* poly = std::get_if<ConvexPolygon>(&d)) {
    j["type"] = "polygon";
    auto& vs = j["vertices"];
    vs = nlohmann::json::array();
    for (const Vec2& v : poly->vertices()) vs.push_back({v.x, v.y});
  } else if (const auto* disk = std::get_if<Disk2>(&d)) {
    j["type"] = "disk";
    j["center"] = {disk->center.x, disk->center.y};
    j["radius"] = disk->radius;
  } else {
    throw std::runtime_error("radial domains have no file representation");
  }
  return j;
}

inline nlohmann::json domain_to_json(const ConvexDomain3& d) {
  nlohmann::json j;
  if (const auto* ball = std::get_if<Ball3>(&d)) {
    j["type"] = "ball";
    j["center"] = {ball->center.x, ball->center.y, ball->center.z};
    j["radius"] = ball->radius;
  } else {
    const auto& poly = std::get<Polytope3>(d);
    j["type"] = "polytope";
    auto& hs = j["halfspaces"];
    hs = nlohmann::json::array();
    for (const auto& h : poly.half_spaces())
      hs.push_back({{"n", {h.normal.x, h.normal.y, h.normal.z}}, {"c", h.offset}});
    j["witness"] = {poly.witness().x, poly.witness().y, poly.witness().z};
  }
  return j;
}

}  // namespace vario
