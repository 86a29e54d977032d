#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "opengrid/direction.hpp"
#include "opengrid/dispatch.hpp"
#include "opengrid/grid.hpp"

namespace opengrid::render {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

std::string to_hex(Rgb c);

// Linear two-colour ramp over t in [0, 1].
struct ColorRamp {
  Rgb low;
  Rgb high;

  Rgb at(double t) const;
};

// Each render normalizes a quantity to [min, max] of the values it plots;
// a flat range maps everything to the low colour.
struct RenderStyle {
  ColorRamp bus_ramp{{0x2c, 0x7b, 0xb6}, {0xd7, 0x19, 0x1c}};
  ColorRamp line_ramp{{0xc6, 0xdb, 0xef}, {0x08, 0x30, 0x6b}};
};

double normalize(double value, double min, double max);

// FeatureCollection: one Point per bus then one LineString per line, both in
// id order. Buses are coloured by load_mw and lines by flow_mw when a
// solution is given, otherwise both by voltage_kv. The top-level "render"
// member records the quantity and range behind each ramp.
nlohmann::json render_geojson(const Grid& grid, const direction::Orientation& orientation,
                              const dispatch::FlowSolution* solution, const RenderStyle& style = {});

// digraph with one edge per directed line; provenance as an edge attribute.
std::string render_dot(const Grid& grid, const direction::Orientation& orientation);

// Flat projection of the same picture (y axis flipped, fit to 1000 px).
std::string render_svg(const Grid& grid, const direction::Orientation& orientation,
                       const dispatch::FlowSolution* solution, const RenderStyle& style = {});

}  // namespace opengrid::render
