#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "opengrid/dataset.hpp"

namespace opengrid::demand {

// Share of demand assigned to urban buses; Alberta 2021 census figure.
inline constexpr double kDefaultUrbanShare = 0.848;

// dot(a, b) / (|a| |b|). Throws LengthMismatch or ZeroVector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Sample Pearson correlation. Needs length >= 2; throws ConstantVector.
double pearson(std::span<const double> a, std::span<const double> b);

// Average hourly load per planning area for one year (or other label).
struct LoadSeries {
  std::string label;
  std::vector<AreaLoad> loads;
};

struct SimilarityRow {
  std::string label;
  double cosine = 0.0;
  double pearson = 0.0;
};

// Compares each load series against the planning-area population vector,
// both ordered by area id. Every planning area must appear in every series.
std::vector<SimilarityRow> similarity_report(const GridDataset& dataset, std::span<const LoadSeries> series);

// HourlyLoad_<label>.csv files in dir, sorted by label. Falls back to
// HourlyLoad.csv labelled "current" when none exist.
std::vector<LoadSeries> read_load_series(const std::filesystem::path& dir);

// Relative demand index per bus, aligned with dataset.buses().
struct DemandIndex {
  std::vector<double> rdi;
  std::vector<std::string> flagged_areas;  // areas holding no bus
};

// Per planning area: urban_share of its load is split evenly over its urban
// buses, the rest evenly over its non-urban buses. If one category is empty
// the whole load goes to the other. Buses outside every area get 0.
DemandIndex allocate_demand_index(const GridDataset& dataset, double urban_share = kDefaultUrbanShare);

void write_demand_index(std::ostream& out, const GridDataset& dataset, const DemandIndex& index);
void write_similarity(std::ostream& out, std::span<const SimilarityRow> rows);

}  // namespace opengrid::demand
