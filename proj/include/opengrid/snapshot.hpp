#pragma once

#include <string>
#include <vector>

namespace opengrid {

class Grid;

enum class SnapshotMode { MaxCapacity, TimePoint };

// Per-generator output for one scenario, aligned with the dataset's
// id-sorted generator list.
struct GenerationSnapshot {
  SnapshotMode mode = SnapshotMode::MaxCapacity;
  std::string label;
  std::vector<double> output_mw;
};

// Sum of generator outputs per bus index.
std::vector<double> bus_generation(const Grid& grid, const GenerationSnapshot& snapshot);

}  // namespace opengrid
