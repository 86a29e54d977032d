#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "opengrid/dataset.hpp"
#include "opengrid/parallel.hpp"

// Parsing of the open-data CSV family into a GridDataset.
//
//   Substation.csv          id,name,x,y,voltage_kv
//   Line.csv                id,bus_a,bus_b,voltage_kv[,wkt_geometry]
//   Generator.csv           id,bus_id,max_capacity_mw,fuel_type
//   PlanningAreaBorder.csv  area_id,name,ring_index,vertex_index,x,y
//   CityBorder.csv          city_id,name,ring_index,vertex_index,x,y
//   CityPopulationPoint.csv city_id,x,y,population
//   HourlyLoad.csv          area_id,name,avg_hourly_load_mw
//
// Parsers check per-file constraints (schema, numbers, unique ids). Cross-file
// references are resolved by link_dataset().
namespace opengrid::ingest {

inline constexpr const char* kBusFile = "Substation.csv";
inline constexpr const char* kLineFile = "Line.csv";
inline constexpr const char* kGeneratorFile = "Generator.csv";
inline constexpr const char* kPlanningAreaFile = "PlanningAreaBorder.csv";
inline constexpr const char* kCityFile = "CityBorder.csv";
inline constexpr const char* kPopulationFile = "CityPopulationPoint.csv";
inline constexpr const char* kHourlyLoadFile = "HourlyLoad.csv";

std::vector<BusRecord> parse_buses(std::istream& in, const std::string& source);
std::vector<LineRecord> parse_lines(std::istream& in, const std::string& source);
std::vector<GeneratorRecord> parse_generators(std::istream& in, const std::string& source);
std::vector<RegionBoundary> parse_planning_area_polygons(std::istream& in, const std::string& source);
std::vector<RegionBoundary> parse_city_polygons(std::istream& in, const std::string& source);
std::vector<PopulationPoint> parse_population_points(std::istream& in, const std::string& source);
std::vector<AreaLoad> parse_hourly_loads(std::istream& in, const std::string& source);

std::vector<BusRecord> parse_buses(const std::filesystem::path& path);
std::vector<LineRecord> parse_lines(const std::filesystem::path& path);
std::vector<GeneratorRecord> parse_generators(const std::filesystem::path& path);
std::vector<RegionBoundary> parse_planning_area_polygons(const std::filesystem::path& path);
std::vector<RegionBoundary> parse_city_polygons(const std::filesystem::path& path);
std::vector<PopulationPoint> parse_population_points(const std::filesystem::path& path);
std::vector<AreaLoad> parse_hourly_loads(const std::filesystem::path& path);

// Writers emit the normalized form of each schema (sorted input order is the
// caller's business; numbers use csv::format_number).
void write_buses(std::ostream& out, std::span<const BusRecord> buses);
void write_lines(std::ostream& out, std::span<const LineRecord> lines);
void write_generators(std::ostream& out, std::span<const GeneratorRecord> generators);
void write_planning_area_polygons(std::ostream& out, std::span<const RegionBoundary> areas);
void write_city_polygons(std::ostream& out, std::span<const RegionBoundary> cities);
void write_population_points(std::ostream& out, std::span<const PopulationPoint> points);
void write_hourly_loads(std::ostream& out, std::span<const AreaLoad> loads);

// Reads every known file in dir. Substation.csv and Line.csv are required;
// the rest are optional and yield empty collections when absent.
RawDataset read_dataset_files(const std::filesystem::path& dir);

// Annotates buses with their planning area and urban flag. A bus inside two
// planning areas is an OverlappingAreas error; a bus in none keeps
// planning_area_id empty. Result order matches input order.
std::vector<BusRecord> assign_regions(std::span<const BusRecord> buses,
                                      std::span<const RegionBoundary> planning_areas,
                                      std::span<const RegionBoundary> cities,
                                      ExecPolicy policy = ExecPolicy::Parallel);

// Resolves references (DanglingReference, SelfLoop), assigns regions,
// aggregates population points into planning areas and attaches hourly
// loads. Sorts every collection by id.
GridDataset link_dataset(RawDataset raw, ExecPolicy policy = ExecPolicy::Parallel);

GridDataset load_dataset(const std::filesystem::path& dir,
                         ExecPolicy policy = ExecPolicy::Parallel);

enum class FindingKind {
  UnassignedBus,
  IsolatedBus,
  LineAboveEndpoints,
  LineBelowEndpoints,
  DuplicateLineGeometry,
  DuplicateBusLocation,
};

std::string_view to_string(FindingKind kind);

struct Finding {
  FindingKind kind;
  std::string subject;  // bus or line id
  std::string detail;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool empty() const { return findings.empty(); }
  std::size_t count(FindingKind kind) const;
};

ValidationReport validate_dataset(const GridDataset& dataset);

}  // namespace opengrid::ingest
