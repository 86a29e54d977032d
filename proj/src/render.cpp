#include "opengrid/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "opengrid/csv.hpp"

namespace opengrid::render {
namespace {

using direction::Orientation;
using nlohmann::json;

struct Range {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double v) {
    min = std::min(min, v);
    max = std::max(max, v);
  }
  void settle() {
    if (min > max) min = max = 0.0;
  }
};

std::vector<PlanarPoint> line_path(const Grid& grid, std::size_t e) {
  const auto& geometry = grid.line(e).geometry;
  if (!geometry.empty()) return geometry;
  return {grid.bus(grid.ends(e).a).location, grid.bus(grid.ends(e).b).location};
}

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed2(double v) { return csv::format_number(std::round(v * 100.0) / 100.0); }

double bus_quantity(const Grid& grid, std::size_t i, const dispatch::FlowSolution* sol) {
  return sol ? sol->load_mw[i] : grid.bus(i).voltage_kv;
}

double line_quantity(const Grid& grid, std::size_t e, const dispatch::FlowSolution* sol) {
  return sol ? sol->flow_mw[e] : grid.line(e).voltage_kv;
}

}  // namespace

std::string to_hex(Rgb c) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out = "#";
  for (auto v : {c.r, c.g, c.b}) {
    out.push_back(digits[v >> 4]);
    out.push_back(digits[v & 0xF]);
  }
  return out;
}

Rgb ColorRamp::at(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  auto mix = [t](std::uint8_t lo, std::uint8_t hi) {
    return static_cast<std::uint8_t>(std::lround(lo + t * (static_cast<double>(hi) - lo)));
  };
  return {mix(low.r, high.r), mix(low.g, high.g), mix(low.b, high.b)};
}

double normalize(double value, double min, double max) {
  if (!(max > min)) return 0.0;
  return (value - min) / (max - min);
}

json render_geojson(const Grid& grid, const Orientation& orientation, const dispatch::FlowSolution* solution,
                    const RenderStyle& style) {
  Range bus_range, line_range;
  for (std::size_t i = 0; i < grid.bus_count(); ++i) bus_range.add(bus_quantity(grid, i, solution));
  for (std::size_t e = 0; e < grid.line_count(); ++e) line_range.add(line_quantity(grid, e, solution));
  bus_range.settle();
  line_range.settle();

  json features = json::array();
  for (std::size_t i = 0; i < grid.bus_count(); ++i) {
    const auto& bus = grid.bus(i);
    json props = {{"id", bus.id},
                  {"name", bus.name},
                  {"voltage_kv", bus.voltage_kv},
                  {"urban", bus.is_urban},
                  {"color", to_hex(style.bus_ramp.at(
                                normalize(bus_quantity(grid, i, solution), bus_range.min, bus_range.max)))}};
    if (bus.planning_area_id) props["planning_area"] = *bus.planning_area_id;
    if (solution) {
      props["load_mw"] = solution->load_mw[i];
      props["injection_mw"] = solution->injection_mw[i];
      props["epsilon_mw"] = solution->epsilon_mw[i];
    }
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", {bus.location.x, bus.location.y}}}},
                        {"properties", std::move(props)}});
  }
  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    const auto& line = grid.line(e);
    json coords = json::array();
    for (const auto& p : line_path(grid, e)) coords.push_back({p.x, p.y});
    json props = {{"id", line.id},
                  {"voltage_kv", line.voltage_kv},
                  {"color", to_hex(style.line_ramp.at(
                                normalize(line_quantity(grid, e, solution), line_range.min, line_range.max)))}};
    if (orientation.is_set(e)) {
      props["direction"] = std::string(direction::to_string(orientation.at(e)->direction));
      props["provenance"] = std::string(direction::to_string(orientation.at(e)->provenance));
      props["from"] = grid.bus(orientation.from_bus(grid, e)).id;
      props["to"] = grid.bus(orientation.to_bus(grid, e)).id;
    }
    if (solution) props["flow_mw"] = solution->flow_mw[e];
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", std::move(coords)}}},
                        {"properties", std::move(props)}});
  }

  const char* bus_q = solution ? "load_mw" : "voltage_kv";
  const char* line_q = solution ? "flow_mw" : "voltage_kv";
  return {{"type", "FeatureCollection"},
          {"features", std::move(features)},
          {"render",
           {{"normalization", "linear per render over [min, max]"},
            {"bus", {{"quantity", bus_q}, {"min", bus_range.min}, {"max", bus_range.max},
                     {"low", to_hex(style.bus_ramp.low)}, {"high", to_hex(style.bus_ramp.high)}}},
            {"line", {{"quantity", line_q}, {"min", line_range.min}, {"max", line_range.max},
                      {"low", to_hex(style.line_ramp.low)}, {"high", to_hex(style.line_ramp.high)}}}}}};
}

std::string render_dot(const Grid& grid, const Orientation& orientation) {
  std::ostringstream out;
  out << "digraph grid {\n";
  for (std::size_t i = 0; i < grid.bus_count(); ++i) {
    const auto& bus = grid.bus(i);
    out << "  " << dot_id(bus.id) << " [label=" << dot_id(bus.id + " " + csv::format_number(bus.voltage_kv) + " kV")
        << "];\n";
  }
  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    const auto& line = grid.line(e);
    if (orientation.is_set(e)) {
      out << "  " << dot_id(grid.bus(orientation.from_bus(grid, e)).id) << " -> "
          << dot_id(grid.bus(orientation.to_bus(grid, e)).id) << " [id=" << dot_id(line.id)
          << ", provenance=" << dot_id(std::string(direction::to_string(orientation.at(e)->provenance))) << "];\n";
    } else {
      out << "  " << dot_id(grid.bus(grid.ends(e).a).id) << " -> " << dot_id(grid.bus(grid.ends(e).b).id)
          << " [id=" << dot_id(line.id) << ", dir=none];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string render_svg(const Grid& grid, const Orientation& orientation, const dispatch::FlowSolution* solution,
                       const RenderStyle& style) {
  constexpr double kSize = 1000.0;
  constexpr double kMargin = 20.0;

  Range xs, ys, bus_range, line_range;
  for (std::size_t i = 0; i < grid.bus_count(); ++i) {
    xs.add(grid.bus(i).location.x);
    ys.add(grid.bus(i).location.y);
    bus_range.add(bus_quantity(grid, i, solution));
  }
  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    for (const auto& p : line_path(grid, e)) {
      xs.add(p.x);
      ys.add(p.y);
    }
    line_range.add(line_quantity(grid, e, solution));
  }
  xs.settle();
  ys.settle();
  bus_range.settle();
  line_range.settle();
  const double span = std::max({xs.max - xs.min, ys.max - ys.min, 1e-9});
  const double scale = (kSize - 2 * kMargin) / span;
  auto px = [&](PlanarPoint p) {
    return std::make_pair(kMargin + (p.x - xs.min) * scale, kMargin + (ys.max - p.y) * scale);
  };
  const double height = 2 * kMargin + (ys.max - ys.min) * scale;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed2(kSize) << "\" height=\"" << fixed2(height)
      << "\" viewBox=\"0 0 " << fixed2(kSize) << ' ' << fixed2(height) << "\">\n"
      << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    auto path = line_path(grid, e);
    if (orientation.is_set(e) && orientation.at(e)->direction == direction::Direction::BtoA) {
      std::reverse(path.begin(), path.end());
    }
    const auto color =
        to_hex(style.line_ramp.at(normalize(line_quantity(grid, e, solution), line_range.min, line_range.max)));
    out << "<polyline id=\"" << xml_escape(grid.line(e).id) << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\"" << (orientation.is_set(e) ? " marker-end=\"url(#arrow)\"" : "") << " points=\"";
    for (std::size_t k = 0; k < path.size(); ++k) {
      const auto [x, y] = px(path[k]);
      out << (k ? " " : "") << fixed2(x) << ',' << fixed2(y);
    }
    out << "\"/>\n";
  }
  for (std::size_t i = 0; i < grid.bus_count(); ++i) {
    const auto [x, y] = px(grid.bus(i).location);
    const auto color =
        to_hex(style.bus_ramp.at(normalize(bus_quantity(grid, i, solution), bus_range.min, bus_range.max)));
    out << "<circle id=\"" << xml_escape(grid.bus(i).id) << "\" cx=\"" << fixed2(x) << "\" cy=\"" << fixed2(y)
        << "\" r=\"5\" fill=\"" << color << "\"><title>" << xml_escape(grid.bus(i).id) << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace opengrid::render
