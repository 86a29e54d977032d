#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opengrid/geometry.hpp"
#include "opengrid/parallel.hpp"

namespace opengrid {

struct BusRecord {
  std::string id;
  std::string name;
  PlanarPoint location;
  double voltage_kv = 0.0;
  // Filled by region assignment, never parsed.
  std::optional<std::string> planning_area_id;
  bool is_urban = false;
};

struct LineRecord {
  std::string id;
  std::string endpoint_a;
  std::string endpoint_b;
  double voltage_kv = 0.0;
  std::vector<PlanarPoint> geometry;  // empty when the export has none
};

struct GeneratorRecord {
  std::string id;
  std::string bus_id;
  double max_capacity_mw = 0.0;
  std::string fuel_type;
};

// A named polygon as read from PlanningAreaBorder.csv or CityBorder.csv.
struct RegionBoundary {
  std::string id;
  std::string name;
  PlanarPolygon boundary;
};

struct PopulationPoint {
  std::string city_id;
  PlanarPoint location;
  std::int64_t population = 0;
};

struct AreaLoad {
  std::string area_id;
  std::string name;
  double avg_hourly_load_mw = 0.0;
};

struct PlanningArea {
  std::string id;
  std::string name;
  PlanarPolygon boundary;
  double avg_hourly_load_mw = 0.0;
  std::int64_t population = 0;
};

struct DatasetProvenance {
  std::vector<std::string> source_files;
  std::string ingested_at;  // ISO-8601 UTC
};

// Everything parsed from a data directory, before cross-file linking.
struct RawDataset {
  std::vector<BusRecord> buses;
  std::vector<LineRecord> lines;
  std::vector<GeneratorRecord> generators;
  std::vector<RegionBoundary> planning_areas;
  std::vector<RegionBoundary> cities;
  std::vector<PopulationPoint> population_points;
  std::vector<AreaLoad> loads;
  DatasetProvenance provenance;
};

class GridDataset;
namespace ingest {
GridDataset link_dataset(RawDataset raw, ExecPolicy policy);
}

// Linked, region-annotated and immutable. All record vectors are sorted by
// id, so a record's position doubles as its index everywhere downstream.
class GridDataset {
 public:
  const std::vector<BusRecord>& buses() const { return buses_; }
  const std::vector<LineRecord>& lines() const { return lines_; }
  const std::vector<GeneratorRecord>& generators() const { return generators_; }
  const std::vector<PlanningArea>& planning_areas() const { return planning_areas_; }
  const std::vector<RegionBoundary>& city_polygons() const { return cities_; }
  const DatasetProvenance& provenance() const { return provenance_; }
  // Non-fatal findings from linking (unassigned buses, areas without load...).
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::optional<std::size_t> bus_index(const std::string& id) const;
  std::optional<std::size_t> area_index(const std::string& id) const;

 private:
  friend GridDataset ingest::link_dataset(RawDataset raw, ExecPolicy policy);

  std::vector<BusRecord> buses_;
  std::vector<LineRecord> lines_;
  std::vector<GeneratorRecord> generators_;
  std::vector<PlanningArea> planning_areas_;
  std::vector<RegionBoundary> cities_;
  DatasetProvenance provenance_;
  std::vector<std::string> warnings_;
};

}  // namespace opengrid
