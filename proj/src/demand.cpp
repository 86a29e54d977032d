#include "opengrid/demand.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "opengrid/csv.hpp"
#include "opengrid/error.hpp"
#include "opengrid/ingest.hpp"

namespace opengrid::demand {
namespace {

void check_lengths(std::span<const double> a, std::span<const double> b, std::size_t min_len) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "vectors differ in length (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() < min_len) {
    throw Error(ErrorCode::LengthMismatch, "need at least " + std::to_string(min_len) + " values");
  }
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b, 1);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::ZeroVector, "cosine similarity of an all-zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b, 2);
  const double ma = mean(a);
  const double mb = mean(b);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0) throw Error(ErrorCode::ConstantVector, "Pearson correlation of a constant vector");
  return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

std::vector<SimilarityRow> similarity_report(const GridDataset& dataset, std::span<const LoadSeries> series) {
  const auto& areas = dataset.planning_areas();
  std::vector<double> population;
  population.reserve(areas.size());
  for (const auto& a : areas) population.push_back(static_cast<double>(a.population));

  std::vector<SimilarityRow> rows;
  for (const auto& s : series) {
    std::map<std::string, double> by_area;
    for (const auto& l : s.loads) by_area[l.area_id] = l.avg_hourly_load_mw;
    std::vector<double> load;
    load.reserve(areas.size());
    for (const auto& a : areas) {
      const auto it = by_area.find(a.id);
      if (it == by_area.end()) {
        throw Error(ErrorCode::DanglingReference,
                    "load series '" + s.label + "' has no value for planning area '" + a.id + "'");
      }
      load.push_back(it->second);
    }
    rows.push_back({s.label, cosine_similarity(load, population), pearson(load, population)});
  }
  return rows;
}

std::vector<LoadSeries> read_load_series(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::vector<LoadSeries> out;
  if (fs::is_directory(dir)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (!entry.is_regular_file() || !name.starts_with("HourlyLoad_") || !name.ends_with(".csv")) continue;
      const std::string label = name.substr(11, name.size() - 11 - 4);
      if (label.empty()) continue;
      out.push_back({label, ingest::parse_hourly_loads(entry.path())});
    }
  }
  std::sort(out.begin(), out.end(), [](const LoadSeries& a, const LoadSeries& b) { return a.label < b.label; });
  if (out.empty()) {
    const fs::path current = dir / ingest::kHourlyLoadFile;
    if (fs::exists(current)) out.push_back({"current", ingest::parse_hourly_loads(current)});
  }
  return out;
}

DemandIndex allocate_demand_index(const GridDataset& dataset, double urban_share) {
  if (!(urban_share >= 0.0 && urban_share <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "urban share must lie in [0, 1]");
  }
  const auto& buses = dataset.buses();
  const auto& areas = dataset.planning_areas();

  std::vector<std::size_t> urban(areas.size(), 0);
  std::vector<std::size_t> rural(areas.size(), 0);
  std::vector<long long> area_of(buses.size(), -1);
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (!buses[i].planning_area_id) continue;
    const auto a = dataset.area_index(*buses[i].planning_area_id);
    if (!a) continue;
    area_of[i] = static_cast<long long>(*a);
    ++(buses[i].is_urban ? urban : rural)[*a];
  }

  // Per-area shares; an empty category hands its share to the other one.
  std::vector<double> urban_each(areas.size(), 0.0);
  std::vector<double> rural_each(areas.size(), 0.0);
  DemandIndex out;
  for (std::size_t a = 0; a < areas.size(); ++a) {
    const double h = areas[a].avg_hourly_load_mw;
    if (urban[a] == 0 && rural[a] == 0) {
      out.flagged_areas.push_back(areas[a].id);
      continue;
    }
    double urban_total = urban_share * h;
    double rural_total = (1.0 - urban_share) * h;
    if (urban[a] == 0) {
      rural_total = h;
      urban_total = 0.0;
    } else if (rural[a] == 0) {
      urban_total = h;
      rural_total = 0.0;
    }
    if (urban[a]) urban_each[a] = urban_total / static_cast<double>(urban[a]);
    if (rural[a]) rural_each[a] = rural_total / static_cast<double>(rural[a]);
  }

  out.rdi.assign(buses.size(), 0.0);
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (area_of[i] < 0) continue;
    const auto a = static_cast<std::size_t>(area_of[i]);
    out.rdi[i] = buses[i].is_urban ? urban_each[a] : rural_each[a];
  }
  return out;
}

void write_demand_index(std::ostream& out, const GridDataset& dataset, const DemandIndex& index) {
  csv::write_row(out, {"bus_id", "rdi"});
  for (std::size_t i = 0; i < dataset.buses().size(); ++i) {
    csv::write_row(out, {dataset.buses()[i].id, csv::format_number(index.rdi[i])});
  }
}

void write_similarity(std::ostream& out, std::span<const SimilarityRow> rows) {
  csv::write_row(out, {"year", "cosine", "pearson"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.label, csv::format_number(r.cosine), csv::format_number(r.pearson)});
  }
}

}  // namespace opengrid::demand
