#pragma once

#include <string>
#include <string_view>
#include <vector>

// Planar geometry in abstract map units. Coordinates are digitized pixel
// positions, so there is no datum, projection or geodesy here.
namespace opengrid {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool contains(PlanarPoint p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

using Ring = std::vector<PlanarPoint>;

// First ring is the outer boundary, the rest are holes. Rings are stored
// closed (last vertex repeats the first).
class PlanarPolygon {
 public:
  PlanarPolygon() = default;

  // Closes open rings and validates: finite coordinates, >= 3 distinct
  // vertices per ring, at least one ring. Throws InvalidGeometry.
  static PlanarPolygon from_rings(std::vector<Ring> rings, std::string_view label = {});

  const std::vector<Ring>& rings() const { return rings_; }
  const BoundingBox& bounds() const { return bounds_; }
  bool empty() const { return rings_.empty(); }

 private:
  std::vector<Ring> rings_;
  BoundingBox bounds_;
};

// Even-odd ray casting over all rings. Points exactly on any ring edge or
// vertex count as inside.
bool point_in_polygon(PlanarPoint p, const PlanarPolygon& poly);

// True when p lies on a segment of any ring (exact arithmetic).
bool point_on_boundary(PlanarPoint p, const PlanarPolygon& poly);

// WKT LINESTRING helpers for line geometries: "LINESTRING (x y, x y, ...)".
std::vector<PlanarPoint> parse_wkt_linestring(std::string_view wkt);
std::string format_wkt_linestring(const std::vector<PlanarPoint>& points);

}  // namespace opengrid
