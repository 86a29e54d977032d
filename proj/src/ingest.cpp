#include "opengrid/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_set>

#include "opengrid/csv.hpp"
#include "opengrid/error.hpp"

namespace opengrid {

std::optional<std::size_t> GridDataset::bus_index(const std::string& id) const {
  const auto it = std::lower_bound(buses_.begin(), buses_.end(), id,
                                   [](const BusRecord& b, const std::string& key) { return b.id < key; });
  if (it == buses_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - buses_.begin());
}

std::optional<std::size_t> GridDataset::area_index(const std::string& id) const {
  const auto it = std::lower_bound(planning_areas_.begin(), planning_areas_.end(), id,
                                   [](const PlanningArea& a, const std::string& key) { return a.id < key; });
  if (it == planning_areas_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - planning_areas_.begin());
}

namespace ingest {
namespace {

using csv::Record;
using csv::Table;

std::string row_ref(const Table& t, const Record& r) {
  return t.source() + " row " + std::to_string(r.number);
}

std::string required_text(const Table& t, const Record& r, std::size_t col, std::string_view name) {
  std::string value(t.field(r, col));
  if (value.empty()) {
    throw Error(ErrorCode::MalformedRow, row_ref(t, r) + ": empty '" + std::string(name) + "'");
  }
  return value;
}

// Tracks ids already seen in a file so duplicates can name their row.
class IdRegistry {
 public:
  void add(const std::string& id, const Table& t, const Record& r) {
    if (!seen_.insert(id).second) {
      throw Error(ErrorCode::DuplicateId, row_ref(t, r) + ": duplicate id '" + id + "'");
    }
  }

 private:
  std::unordered_set<std::string> seen_;
};

std::vector<RegionBoundary> parse_polygons(std::istream& in, const std::string& source,
                                           std::string_view id_column) {
  const Table t = Table::read(in, source);
  const auto c_id = t.column(id_column);
  const auto c_name = t.column("name");
  const auto c_ring = t.column("ring_index");
  const auto c_vertex = t.column("vertex_index");
  const auto c_x = t.column("x");
  const auto c_y = t.column("y");

  struct Vertex {
    long long ring;
    long long index;
    PlanarPoint p;
  };
  struct Pending {
    std::string name;
    std::vector<Vertex> vertices;
    std::set<std::pair<long long, long long>> keys;
  };
  std::map<std::string, Pending> regions;

  for (const auto& r : t.records()) {
    const std::string id = required_text(t, r, c_id, id_column);
    auto& region = regions[id];
    if (region.name.empty()) region.name = std::string(t.field(r, c_name));
    Vertex v{csv::parse_integer(t.field(r, c_ring), t, r, "ring_index"),
             csv::parse_integer(t.field(r, c_vertex), t, r, "vertex_index"),
             {csv::parse_number(t.field(r, c_x), ErrorCode::NonNumericValue, t, r, "x"),
              csv::parse_number(t.field(r, c_y), ErrorCode::NonNumericValue, t, r, "y")}};
    if (!region.keys.emplace(v.ring, v.index).second) {
      throw Error(ErrorCode::DuplicateId, row_ref(t, r) + ": duplicate vertex (" +
                                              std::to_string(v.ring) + "," +
                                              std::to_string(v.index) + ") for '" + id + "'");
    }
    region.vertices.push_back(v);
  }

  std::vector<RegionBoundary> out;
  out.reserve(regions.size());
  for (auto& [id, pending] : regions) {
    std::sort(pending.vertices.begin(), pending.vertices.end(), [](const Vertex& a, const Vertex& b) {
      return a.ring < b.ring || (a.ring == b.ring && a.index < b.index);
    });
    std::vector<Ring> rings;
    long long current = 0;
    for (std::size_t i = 0; i < pending.vertices.size(); ++i) {
      const auto& v = pending.vertices[i];
      if (i == 0 || v.ring != current) {
        rings.emplace_back();
        current = v.ring;
      }
      rings.back().push_back(v.p);
    }
    out.push_back({id, pending.name, PlanarPolygon::from_rings(std::move(rings), source + ":" + id)});
  }
  return out;
}

void write_polygons(std::ostream& out, std::span<const RegionBoundary> regions,
                    const std::string& id_column) {
  csv::write_row(out, {id_column, "name", "ring_index", "vertex_index", "x", "y"});
  for (const auto& region : regions) {
    const auto& rings = region.boundary.rings();
    for (std::size_t r = 0; r < rings.size(); ++r) {
      for (std::size_t v = 0; v < rings[r].size(); ++v) {
        csv::write_row(out, {region.id, region.name, std::to_string(r), std::to_string(v),
                             csv::format_number(rings[r][v].x), csv::format_number(rings[r][v].y)});
      }
    }
  }
}

template <typename Fn>
auto parse_path(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return fn(in, path.string());
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Region lookup for a single point. Strictly interior hits win over boundary
// hits; two interior hits are an overlap. Among boundary-only hits the first
// region (lowest id when sorted) is taken.
struct RegionHit {
  long long region = -1;
  long long overlap_with = -1;
};

RegionHit locate(PlanarPoint p, std::span<const RegionBoundary> regions) {
  RegionHit hit;
  long long boundary_hit = -1;
  for (std::size_t a = 0; a < regions.size(); ++a) {
    const auto& poly = regions[a].boundary;
    if (!point_in_polygon(p, poly)) continue;
    if (point_on_boundary(p, poly)) {
      if (boundary_hit < 0) boundary_hit = static_cast<long long>(a);
      continue;
    }
    if (hit.region >= 0) {
      hit.overlap_with = static_cast<long long>(a);
      return hit;
    }
    hit.region = static_cast<long long>(a);
  }
  if (hit.region < 0) hit.region = boundary_hit;
  return hit;
}

}  // namespace

std::vector<BusRecord> parse_buses(std::istream& in, const std::string& source) {
  const Table t = Table::read(in, source);
  const auto c_id = t.column("id");
  const auto c_name = t.column("name");
  const auto c_x = t.column("x");
  const auto c_y = t.column("y");
  const auto c_kv = t.column("voltage_kv");

  std::vector<BusRecord> out;
  IdRegistry ids;
  for (const auto& r : t.records()) {
    BusRecord b;
    b.id = required_text(t, r, c_id, "id");
    ids.add(b.id, t, r);
    b.name = std::string(t.field(r, c_name));
    b.location = {csv::parse_number(t.field(r, c_x), ErrorCode::NonNumericValue, t, r, "x"),
                  csv::parse_number(t.field(r, c_y), ErrorCode::NonNumericValue, t, r, "y")};
    b.voltage_kv = csv::parse_number(t.field(r, c_kv), ErrorCode::NonNumericVoltage, t, r, "voltage_kv");
    if (b.voltage_kv <= 0.0) {
      throw Error(ErrorCode::NonNumericVoltage, row_ref(t, r) + ": voltage_kv must be positive");
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<LineRecord> parse_lines(std::istream& in, const std::string& source) {
  const Table t = Table::read(in, source);
  const auto c_id = t.column("id");
  const auto c_a = t.column("bus_a");
  const auto c_b = t.column("bus_b");
  const auto c_kv = t.column("voltage_kv");
  const auto c_wkt = t.find_column("wkt_geometry");

  std::vector<LineRecord> out;
  IdRegistry ids;
  for (const auto& r : t.records()) {
    LineRecord l;
    l.id = required_text(t, r, c_id, "id");
    ids.add(l.id, t, r);
    l.endpoint_a = required_text(t, r, c_a, "bus_a");
    l.endpoint_b = required_text(t, r, c_b, "bus_b");
    if (l.endpoint_a == l.endpoint_b) {
      throw Error(ErrorCode::SelfLoop, row_ref(t, r) + ": line '" + l.id + "' connects '" +
                                           l.endpoint_a + "' to itself");
    }
    l.voltage_kv = csv::parse_number(t.field(r, c_kv), ErrorCode::NonNumericVoltage, t, r, "voltage_kv");
    if (l.voltage_kv <= 0.0) {
      throw Error(ErrorCode::NonNumericVoltage, row_ref(t, r) + ": voltage_kv must be positive");
    }
    if (c_wkt) {
      try {
        l.geometry = parse_wkt_linestring(t.field(r, *c_wkt));
      } catch (const Error& e) {
        throw Error(ErrorCode::InvalidGeometry, row_ref(t, r) + ": " + e.what());
      }
    }
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<GeneratorRecord> parse_generators(std::istream& in, const std::string& source) {
  const Table t = Table::read(in, source);
  const auto c_id = t.column("id");
  const auto c_bus = t.column("bus_id");
  const auto c_cap = t.column("max_capacity_mw");
  const auto c_fuel = t.column("fuel_type");

  std::vector<GeneratorRecord> out;
  IdRegistry ids;
  for (const auto& r : t.records()) {
    GeneratorRecord g;
    g.id = required_text(t, r, c_id, "id");
    ids.add(g.id, t, r);
    g.bus_id = required_text(t, r, c_bus, "bus_id");
    g.max_capacity_mw =
        csv::parse_number(t.field(r, c_cap), ErrorCode::NonNumericValue, t, r, "max_capacity_mw");
    if (g.max_capacity_mw < 0.0) {
      throw Error(ErrorCode::MalformedRow, row_ref(t, r) + ": max_capacity_mw must be >= 0");
    }
    g.fuel_type = std::string(t.field(r, c_fuel));
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<RegionBoundary> parse_planning_area_polygons(std::istream& in, const std::string& source) {
  return parse_polygons(in, source, "area_id");
}

std::vector<RegionBoundary> parse_city_polygons(std::istream& in, const std::string& source) {
  return parse_polygons(in, source, "city_id");
}

std::vector<PopulationPoint> parse_population_points(std::istream& in, const std::string& source) {
  const Table t = Table::read(in, source);
  const auto c_city = t.column("city_id");
  const auto c_x = t.column("x");
  const auto c_y = t.column("y");
  const auto c_pop = t.column("population");

  std::vector<PopulationPoint> out;
  for (const auto& r : t.records()) {
    PopulationPoint p;
    p.city_id = required_text(t, r, c_city, "city_id");
    p.location = {csv::parse_number(t.field(r, c_x), ErrorCode::NonNumericValue, t, r, "x"),
                  csv::parse_number(t.field(r, c_y), ErrorCode::NonNumericValue, t, r, "y")};
    p.population = csv::parse_integer(t.field(r, c_pop), t, r, "population");
    if (p.population < 0) {
      throw Error(ErrorCode::MalformedRow, row_ref(t, r) + ": population must be >= 0");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<AreaLoad> parse_hourly_loads(std::istream& in, const std::string& source) {
  const Table t = Table::read(in, source);
  const auto c_id = t.column("area_id");
  const auto c_name = t.column("name");
  const auto c_load = t.column("avg_hourly_load_mw");

  std::vector<AreaLoad> out;
  IdRegistry ids;
  for (const auto& r : t.records()) {
    AreaLoad a;
    a.area_id = required_text(t, r, c_id, "area_id");
    ids.add(a.area_id, t, r);
    a.name = std::string(t.field(r, c_name));
    a.avg_hourly_load_mw =
        csv::parse_number(t.field(r, c_load), ErrorCode::NonNumericValue, t, r, "avg_hourly_load_mw");
    if (a.avg_hourly_load_mw < 0.0) {
      throw Error(ErrorCode::MalformedRow, row_ref(t, r) + ": avg_hourly_load_mw must be >= 0");
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<BusRecord> parse_buses(const std::filesystem::path& path) {
  return parse_path(path, [](std::istream& in, const std::string& s) { return parse_buses(in, s); });
}
std::vector<LineRecord> parse_lines(const std::filesystem::path& path) {
  return parse_path(path, [](std::istream& in, const std::string& s) { return parse_lines(in, s); });
}
std::vector<GeneratorRecord> parse_generators(const std::filesystem::path& path) {
  return parse_path(path, [](std::istream& in, const std::string& s) { return parse_generators(in, s); });
}
std::vector<RegionBoundary> parse_planning_area_polygons(const std::filesystem::path& path) {
  return parse_path(path, [](std::istream& in, const std::string& s) {
    return parse_planning_area_polygons(in, s);
  });
}
std::vector<RegionBoundary> parse_city_polygons(const std::filesystem::path& path) {
  return parse_path(path, [](std::istream& in, const std::string& s) { return parse_city_polygons(in, s); });
}
std::vector<PopulationPoint> parse_population_points(const std::filesystem::path& path) {
  return parse_path(path, [](std::istream& in, const std::string& s) {
    return parse_population_points(in, s);
  });
}
std::vector<AreaLoad> parse_hourly_loads(const std::filesystem::path& path) {
  return parse_path(path, [](std::istream& in, const std::string& s) { return parse_hourly_loads(in, s); });
}

void write_buses(std::ostream& out, std::span<const BusRecord> buses) {
  csv::write_row(out, {"id", "name", "x", "y", "voltage_kv"});
  for (const auto& b : buses) {
    csv::write_row(out, {b.id, b.name, csv::format_number(b.location.x),
                         csv::format_number(b.location.y), csv::format_number(b.voltage_kv)});
  }
}

void write_lines(std::ostream& out, std::span<const LineRecord> lines) {
  csv::write_row(out, {"id", "bus_a", "bus_b", "voltage_kv", "wkt_geometry"});
  for (const auto& l : lines) {
    csv::write_row(out, {l.id, l.endpoint_a, l.endpoint_b, csv::format_number(l.voltage_kv),
                         format_wkt_linestring(l.geometry)});
  }
}

void write_generators(std::ostream& out, std::span<const GeneratorRecord> generators) {
  csv::write_row(out, {"id", "bus_id", "max_capacity_mw", "fuel_type"});
  for (const auto& g : generators) {
    csv::write_row(out, {g.id, g.bus_id, csv::format_number(g.max_capacity_mw), g.fuel_type});
  }
}

void write_planning_area_polygons(std::ostream& out, std::span<const RegionBoundary> areas) {
  write_polygons(out, areas, "area_id");
}

void write_city_polygons(std::ostream& out, std::span<const RegionBoundary> cities) {
  write_polygons(out, cities, "city_id");
}

void write_population_points(std::ostream& out, std::span<const PopulationPoint> points) {
  csv::write_row(out, {"city_id", "x", "y", "population"});
  for (const auto& p : points) {
    csv::write_row(out, {p.city_id, csv::format_number(p.location.x), csv::format_number(p.location.y),
                         std::to_string(p.population)});
  }
}

void write_hourly_loads(std::ostream& out, std::span<const AreaLoad> loads) {
  csv::write_row(out, {"area_id", "name", "avg_hourly_load_mw"});
  for (const auto& a : loads) {
    csv::write_row(out, {a.area_id, a.name, csv::format_number(a.avg_hourly_load_mw)});
  }
}

RawDataset read_dataset_files(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "not a directory: " + dir.string());

  RawDataset raw;
  auto optional_file = [&](const char* name) -> std::optional<fs::path> {
    const fs::path p = dir / name;
    if (!fs::exists(p)) return std::nullopt;
    raw.provenance.source_files.push_back(p.string());
    return p;
  };
  auto required_file = [&](const char* name) {
    auto p = optional_file(name);
    if (!p) throw Error(ErrorCode::Io, "missing required file " + (dir / name).string());
    return *p;
  };

  raw.buses = parse_buses(required_file(kBusFile));
  raw.lines = parse_lines(required_file(kLineFile));
  if (auto p = optional_file(kGeneratorFile)) raw.generators = parse_generators(*p);
  if (auto p = optional_file(kPlanningAreaFile)) raw.planning_areas = parse_planning_area_polygons(*p);
  if (auto p = optional_file(kCityFile)) raw.cities = parse_city_polygons(*p);
  if (auto p = optional_file(kPopulationFile)) raw.population_points = parse_population_points(*p);
  if (auto p = optional_file(kHourlyLoadFile)) raw.loads = parse_hourly_loads(*p);
  raw.provenance.ingested_at = utc_timestamp();
  return raw;
}

std::vector<BusRecord> assign_regions(std::span<const BusRecord> buses,
                                      std::span<const RegionBoundary> planning_areas,
                                      std::span<const RegionBoundary> cities, ExecPolicy policy) {
  const auto n = static_cast<long long>(buses.size());
  std::vector<RegionHit> hits(buses.size());
  std::vector<char> urban(buses.size(), 0);

  auto classify = [&](long long i) {
    const PlanarPoint p = buses[static_cast<std::size_t>(i)].location;
    hits[static_cast<std::size_t>(i)] = locate(p, planning_areas);
    for (const auto& city : cities) {
      if (point_in_polygon(p, city.boundary)) {
        urban[static_cast<std::size_t>(i)] = 1;
        break;
      }
    }
  };

  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) classify(i);
  } else {
    for (long long i = 0; i < n; ++i) classify(i);
  }

  std::vector<BusRecord> out(buses.begin(), buses.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& hit = hits[i];
    if (hit.overlap_with >= 0) {
      throw Error(ErrorCode::OverlappingAreas,
                  "bus '" + out[i].id + "' lies inside planning areas '" +
                      planning_areas[static_cast<std::size_t>(hit.region)].id + "' and '" +
                      planning_areas[static_cast<std::size_t>(hit.overlap_with)].id + "'");
    }
    out[i].planning_area_id.reset();
    if (hit.region >= 0) out[i].planning_area_id = planning_areas[static_cast<std::size_t>(hit.region)].id;
    out[i].is_urban = urban[i] != 0;
  }
  return out;
}

GridDataset link_dataset(RawDataset raw, ExecPolicy policy) {
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  auto check_unique = [](const auto& sorted, const char* what) {
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i].id == sorted[i - 1].id) {
        throw Error(ErrorCode::DuplicateId, std::string(what) + " id '" + sorted[i].id + "' repeated");
      }
    }
  };

  std::sort(raw.buses.begin(), raw.buses.end(), by_id);
  std::sort(raw.lines.begin(), raw.lines.end(), by_id);
  std::sort(raw.generators.begin(), raw.generators.end(), by_id);
  std::sort(raw.planning_areas.begin(), raw.planning_areas.end(), by_id);
  std::sort(raw.cities.begin(), raw.cities.end(), by_id);
  check_unique(raw.buses, "bus");
  check_unique(raw.lines, "line");
  check_unique(raw.generators, "generator");
  check_unique(raw.planning_areas, "planning area");
  check_unique(raw.cities, "city");

  GridDataset ds;
  std::unordered_set<std::string> bus_ids;
  for (const auto& b : raw.buses) {
    if (!(b.voltage_kv > 0.0)) {
      throw Error(ErrorCode::NonNumericVoltage, "bus '" + b.id + "' has non-positive voltage");
    }
    bus_ids.insert(b.id);
  }
  for (const auto& l : raw.lines) {
    if (l.endpoint_a == l.endpoint_b) {
      throw Error(ErrorCode::SelfLoop, "line '" + l.id + "' connects '" + l.endpoint_a + "' to itself");
    }
    for (const auto* end : {&l.endpoint_a, &l.endpoint_b}) {
      if (!bus_ids.contains(*end)) {
        throw Error(ErrorCode::DanglingReference, "line '" + l.id + "' references unknown bus '" + *end + "'");
      }
    }
  }
  for (const auto& g : raw.generators) {
    if (!bus_ids.contains(g.bus_id)) {
      throw Error(ErrorCode::DanglingReference,
                  "generator '" + g.id + "' references unknown bus '" + g.bus_id + "'");
    }
  }

  ds.buses_ = assign_regions(raw.buses, raw.planning_areas, raw.cities, policy);
  if (!raw.planning_areas.empty()) {
    for (const auto& b : ds.buses_) {
      if (!b.planning_area_id) ds.warnings_.push_back("bus '" + b.id + "' is outside every planning area");
    }
  }

  ds.planning_areas_.reserve(raw.planning_areas.size());
  for (auto& region : raw.planning_areas) {
    ds.planning_areas_.push_back({region.id, region.name, std::move(region.boundary), 0.0, 0});
  }

  std::vector<bool> has_load(ds.planning_areas_.size(), false);
  for (const auto& load : raw.loads) {
    const auto idx = ds.area_index(load.area_id);
    if (!idx) {
      throw Error(ErrorCode::DanglingReference,
                  "hourly load references unknown planning area '" + load.area_id + "'");
    }
    ds.planning_areas_[*idx].avg_hourly_load_mw = load.avg_hourly_load_mw;
    has_load[*idx] = true;
  }
  if (!raw.loads.empty()) {
    for (std::size_t a = 0; a < has_load.size(); ++a) {
      if (!has_load[a]) {
        ds.warnings_.push_back("planning area '" + ds.planning_areas_[a].id + "' has no hourly load row");
      }
    }
  }

  std::vector<RegionBoundary> area_shapes;
  area_shapes.reserve(ds.planning_areas_.size());
  for (const auto& a : ds.planning_areas_) area_shapes.push_back({a.id, a.name, a.boundary});
  for (const auto& point : raw.population_points) {
    const auto hit = locate(point.location, area_shapes);
    if (hit.overlap_with >= 0) {
      throw Error(ErrorCode::OverlappingAreas, "population point of city '" + point.city_id +
                                                   "' lies inside two planning areas");
    }
    if (hit.region < 0) {
      ds.warnings_.push_back("population point of city '" + point.city_id +
                             "' is outside every planning area");
      continue;
    }
    ds.planning_areas_[static_cast<std::size_t>(hit.region)].population += point.population;
  }

  ds.lines_ = std::move(raw.lines);
  ds.generators_ = std::move(raw.generators);
  ds.cities_ = std::move(raw.cities);
  ds.provenance_ = std::move(raw.provenance);
  return ds;
}

GridDataset load_dataset(const std::filesystem::path& dir, ExecPolicy policy) {
  return link_dataset(read_dataset_files(dir), policy);
}

std::string_view to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::UnassignedBus: return "unassigned_bus";
    case FindingKind::IsolatedBus: return "isolated_bus";
    case FindingKind::LineAboveEndpoints: return "line_above_endpoints";
    case FindingKind::LineBelowEndpoints: return "line_below_endpoints";
    case FindingKind::DuplicateLineGeometry: return "duplicate_line_geometry";
    case FindingKind::DuplicateBusLocation: return "duplicate_bus_location";
  }
  return "unknown";
}

std::size_t ValidationReport::count(FindingKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [kind](const Finding& f) { return f.kind == kind; }));
}

ValidationReport validate_dataset(const GridDataset& ds) {
  ValidationReport report;
  const auto& buses = ds.buses();

  if (!ds.planning_areas().empty()) {
    for (const auto& b : buses) {
      if (!b.planning_area_id) {
        report.findings.push_back({FindingKind::UnassignedBus, b.id, "outside every planning area"});
      }
    }
  }

  std::vector<std::size_t> degree(buses.size(), 0);
  for (const auto& l : ds.lines()) {
    const auto a = *ds.bus_index(l.endpoint_a);
    const auto b = *ds.bus_index(l.endpoint_b);
    ++degree[a];
    ++degree[b];
    const double va = buses[a].voltage_kv;
    const double vb = buses[b].voltage_kv;
    const std::string detail = csv::format_number(l.voltage_kv) + " kV line between " +
                               csv::format_number(va) + " kV and " + csv::format_number(vb) + " kV buses";
    if (l.voltage_kv > va && l.voltage_kv > vb) {
      report.findings.push_back({FindingKind::LineAboveEndpoints, l.id, detail});
    } else if (l.voltage_kv < va && l.voltage_kv < vb) {
      report.findings.push_back({FindingKind::LineBelowEndpoints, l.id, detail});
    }
  }
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (degree[i] == 0) report.findings.push_back({FindingKind::IsolatedBus, buses[i].id, "no incident lines"});
  }

  auto point_less = [](PlanarPoint a, PlanarPoint b) { return a.x < b.x || (a.x == b.x && a.y < b.y); };
  std::map<std::vector<std::pair<double, double>>, std::string> seen_geometry;
  for (const auto& l : ds.lines()) {
    if (l.geometry.empty()) continue;
    std::vector<PlanarPoint> key_pts = l.geometry;
    std::vector<PlanarPoint> reversed(key_pts.rbegin(), key_pts.rend());
    if (std::lexicographical_compare(reversed.begin(), reversed.end(), key_pts.begin(), key_pts.end(),
                                     point_less)) {
      key_pts = std::move(reversed);
    }
    std::vector<std::pair<double, double>> key;
    for (auto p : key_pts) key.emplace_back(p.x, p.y);
    const auto [it, inserted] = seen_geometry.emplace(std::move(key), l.id);
    if (!inserted) {
      report.findings.push_back({FindingKind::DuplicateLineGeometry, l.id, "same geometry as line '" + it->second + "'"});
    }
  }

  std::map<std::pair<double, double>, std::string> seen_location;
  for (const auto& b : buses) {
    const auto [it, inserted] = seen_location.emplace(std::make_pair(b.location.x, b.location.y), b.id);
    if (!inserted) {
      report.findings.push_back({FindingKind::DuplicateBusLocation, b.id, "same location as bus '" + it->second + "'"});
    }
  }
  return report;
}

}  // namespace ingest
}  // namespace opengrid
