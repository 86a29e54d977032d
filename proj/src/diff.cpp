#include "opengrid/diff.hpp"

#include <ostream>

#include "opengrid/csv.hpp"
#include "opengrid/error.hpp"

namespace opengrid::analysis {

using direction::Orientation;

DirectionDiff direction_diff(const Grid& grid, const Orientation& a, const Orientation& b) {
  if (a.size() != grid.line_count() || b.size() != grid.line_count()) {
    throw Error(ErrorCode::LengthMismatch, "orientations cover different line sets");
  }
  DirectionDiff diff;
  diff.total = grid.line_count();
  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    const auto& x = a.at(e);
    const auto& y = b.at(e);
    const bool same = x.has_value() == y.has_value() && (!x || x->direction == y->direction);
    if (!same) diff.changed.push_back({grid.line(e).id, e, x, y});
  }
  return diff;
}

void write_diff(std::ostream& out, const Grid& grid, const DirectionDiff& diff) {
  csv::write_row(out, {"line_id", "before_from", "before_to", "after_from", "after_to"});
  auto ends = [&](std::size_t e, const std::optional<direction::LineDirection>& d) -> std::pair<std::string, std::string> {
    if (!d) return {"", ""};
    const auto& le = grid.ends(e);
    const auto from = d->direction == direction::Direction::AtoB ? le.a : le.b;
    return {grid.bus(from).id, grid.bus(le.other(from)).id};
  };
  for (const auto& c : diff.changed) {
    const auto [bf, bt] = ends(c.line, c.before);
    const auto [af, at] = ends(c.line, c.after);
    csv::write_row(out, {c.line_id, bf, bt, af, at});
  }
}

}  // namespace opengrid::analysis
