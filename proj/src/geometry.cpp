#include "opengrid/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "opengrid/csv.hpp"
#include "opengrid/error.hpp"

namespace opengrid {
namespace {

bool on_segment(PlanarPoint p, PlanarPoint a, PlanarPoint b) {
  const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
  if (cross != 0.0) return false;
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
         p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_coord(std::string_view s, std::string_view wkt) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidGeometry, "bad coordinate in '" + std::string(wkt) + "'");
  }
  return v;
}

}  // namespace

PlanarPolygon PlanarPolygon::from_rings(std::vector<Ring> rings, std::string_view label) {
  const std::string name = label.empty() ? std::string("polygon") : std::string(label);
  if (rings.empty()) throw Error(ErrorCode::InvalidGeometry, name + ": no rings");

  PlanarPolygon poly;
  poly.bounds_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (std::size_t r = 0; r < rings.size(); ++r) {
    Ring& ring = rings[r];
    for (const auto& p : ring) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error(ErrorCode::InvalidGeometry, name + ": non-finite vertex");
      }
    }
    if (!ring.empty() && ring.front() != ring.back()) ring.push_back(ring.front());

    std::vector<PlanarPoint> distinct(ring.begin(), ring.end());
    std::sort(distinct.begin(), distinct.end(), [](PlanarPoint a, PlanarPoint b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) {
      throw Error(ErrorCode::InvalidGeometry,
                  name + ": ring " + std::to_string(r) + " has fewer than 3 distinct vertices");
    }
    for (const auto& p : ring) {
      poly.bounds_.min_x = std::min(poly.bounds_.min_x, p.x);
      poly.bounds_.min_y = std::min(poly.bounds_.min_y, p.y);
      poly.bounds_.max_x = std::max(poly.bounds_.max_x, p.x);
      poly.bounds_.max_y = std::max(poly.bounds_.max_y, p.y);
    }
  }
  poly.rings_ = std::move(rings);
  return poly;
}

bool point_on_boundary(PlanarPoint p, const PlanarPolygon& poly) {
  for (const auto& ring : poly.rings()) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      if (on_segment(p, ring[i], ring[i + 1])) return true;
    }
  }
  return false;
}

bool point_in_polygon(PlanarPoint p, const PlanarPolygon& poly) {
  if (poly.empty() || !poly.bounds().contains(p)) return false;
  if (point_on_boundary(p, poly)) return true;

  bool inside = false;
  for (const auto& ring : poly.rings()) {
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
      const PlanarPoint a = ring[i];
      const PlanarPoint b = ring[j];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
        if (p.x < x_cross) inside = !inside;
      }
    }
  }
  return inside;
}

std::vector<PlanarPoint> parse_wkt_linestring(std::string_view wkt) {
  std::string_view s = trim(wkt);
  if (s.empty()) return {};
  constexpr std::string_view tag = "LINESTRING";
  if (s.size() < tag.size() ||
      !std::equal(tag.begin(), tag.end(), s.begin(),
                  [](char a, char b) { return a == std::toupper(static_cast<unsigned char>(b)); })) {
    throw Error(ErrorCode::InvalidGeometry, "expected LINESTRING, got '" + std::string(wkt) + "'");
  }
  s = trim(s.substr(tag.size()));
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw Error(ErrorCode::InvalidGeometry, "unbalanced parentheses in '" + std::string(wkt) + "'");
  }
  s = s.substr(1, s.size() - 2);

  std::vector<PlanarPoint> points;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const std::string_view pair = trim(s.substr(0, comma));
    const auto space = pair.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw Error(ErrorCode::InvalidGeometry, "bad vertex in '" + std::string(wkt) + "'");
    }
    points.push_back({parse_coord(pair.substr(0, space), wkt), parse_coord(pair.substr(space), wkt)});
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  if (points.size() < 2) {
    throw Error(ErrorCode::InvalidGeometry, "LINESTRING needs 2 vertices: '" + std::string(wkt) + "'");
  }
  return points;
}

std::string format_wkt_linestring(const std::vector<PlanarPoint>& points) {
  if (points.empty()) return {};
  std::string out = "LINESTRING (";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) out += ", ";
    out += csv::format_number(points[i].x);
    out += ' ';
    out += csv::format_number(points[i].y);
  }
  out += ')';
  return out;
}

}  // namespace opengrid
