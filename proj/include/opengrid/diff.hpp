#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "opengrid/direction.hpp"
#include "opengrid/grid.hpp"

namespace opengrid::analysis {

struct ChangedLine {
  std::string line_id;
  std::size_t line = 0;
  std::optional<direction::LineDirection> before;
  std::optional<direction::LineDirection> after;
};

struct DirectionDiff {
  std::vector<ChangedLine> changed;  // in line order
  std::size_t total = 0;

  std::size_t changed_count() const { return changed.size(); }
};

// Lines whose direction differs between a and b. Provenance alone does not
// count as a change; a line set in one and unset in the other does.
DirectionDiff direction_diff(const Grid& grid, const direction::Orientation& a, const direction::Orientation& b);

// CSV: line_id,before_from,before_to,after_from,after_to
void write_diff(std::ostream& out, const Grid& grid, const DirectionDiff& diff);

}  // namespace opengrid::analysis
