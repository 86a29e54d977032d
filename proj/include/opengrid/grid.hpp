#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "opengrid/dataset.hpp"

namespace opengrid {

// Ordered voltage tier. 240 kV and 500 kV (and anything between) share a
// tier; every other kV value is its own tier, ordered by kV.
class VoltageClass {
 public:
  constexpr explicit VoltageClass(double level) : level_(level) {}

  constexpr double level() const { return level_; }
  friend constexpr auto operator<=>(const VoltageClass&, const VoltageClass&) = default;

 private:
  double level_;
};

VoltageClass voltage_class(double kv);

struct Incidence {
  std::size_t line;
  std::size_t neighbor;
};

struct LineEnds {
  std::size_t a;
  std::size_t b;

  std::size_t other(std::size_t bus) const { return bus == a ? b : a; }
};

// Undirected multigraph over buses (nodes) and lines (edges). Indices follow
// the dataset's id-sorted order, so iteration is deterministic. Parallel
// circuits stay distinct edges.
class Grid {
 public:
  explicit Grid(const GridDataset& dataset);

  std::size_t bus_count() const { return buses_.size(); }
  std::size_t line_count() const { return lines_.size(); }

  const BusRecord& bus(std::size_t i) const { return buses_[i]; }
  const LineRecord& line(std::size_t e) const { return lines_[e]; }
  const LineEnds& ends(std::size_t e) const { return ends_[e]; }
  const std::vector<GeneratorRecord>& generators() const { return generators_; }

  // Sorted by (neighbor index, line index).
  const std::vector<Incidence>& incident(std::size_t bus) const { return adjacency_[bus]; }
  std::size_t degree(std::size_t bus) const { return adjacency_[bus].size(); }
  const std::vector<std::size_t>& generators_at(std::size_t bus) const { return generators_by_bus_[bus]; }

  VoltageClass bus_class(std::size_t bus) const { return voltage_class(buses_[bus].voltage_kv); }
  VoltageClass line_class(std::size_t line) const { return voltage_class(lines_[line].voltage_kv); }

  std::optional<std::size_t> bus_index(const std::string& id) const;
  std::optional<std::size_t> line_index(const std::string& id) const;

 private:
  std::vector<BusRecord> buses_;
  std::vector<LineRecord> lines_;
  std::vector<GeneratorRecord> generators_;
  std::vector<LineEnds> ends_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<std::vector<std::size_t>> generators_by_bus_;
};

Grid build_grid(const GridDataset& dataset);

// Connected components as sorted bus-id lists, ordered by smallest id.
std::vector<std::vector<std::string>> undirected_components(const Grid& grid);

// Same, as bus indices.
std::vector<std::vector<std::size_t>> component_indices(const Grid& grid);

}  // namespace opengrid
