#include "opengrid/grid.hpp"

#include <algorithm>
#include <deque>

#include "opengrid/error.hpp"

namespace opengrid {
namespace {

constexpr double kInterchangeLow = 240.0;
constexpr double kInterchangeHigh = 500.0;

template <typename Record>
std::optional<std::size_t> find_sorted(const std::vector<Record>& records, const std::string& id) {
  const auto it = std::lower_bound(records.begin(), records.end(), id,
                                   [](const Record& r, const std::string& key) { return r.id < key; });
  if (it == records.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - records.begin());
}

}  // namespace

VoltageClass voltage_class(double kv) {
  if (kv >= kInterchangeLow && kv <= kInterchangeHigh) return VoltageClass(kInterchangeLow);
  return VoltageClass(kv);
}

Grid::Grid(const GridDataset& dataset)
    : buses_(dataset.buses()), lines_(dataset.lines()), generators_(dataset.generators()) {
  adjacency_.resize(buses_.size());
  generators_by_bus_.resize(buses_.size());
  ends_.reserve(lines_.size());
  for (std::size_t e = 0; e < lines_.size(); ++e) {
    const auto a = bus_index(lines_[e].endpoint_a);
    const auto b = bus_index(lines_[e].endpoint_b);
    if (!a || !b) {
      throw Error(ErrorCode::DanglingReference, "line '" + lines_[e].id + "' has an unknown endpoint");
    }
    ends_.push_back({*a, *b});
    adjacency_[*a].push_back({e, *b});
    adjacency_[*b].push_back({e, *a});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(), [](const Incidence& x, const Incidence& y) {
      return x.neighbor < y.neighbor || (x.neighbor == y.neighbor && x.line < y.line);
    });
  }
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    const auto bus = bus_index(generators_[g].bus_id);
    if (!bus) {
      throw Error(ErrorCode::DanglingReference, "generator '" + generators_[g].id + "' has an unknown bus");
    }
    generators_by_bus_[*bus].push_back(g);
  }
}

std::optional<std::size_t> Grid::bus_index(const std::string& id) const { return find_sorted(buses_, id); }

std::optional<std::size_t> Grid::line_index(const std::string& id) const { return find_sorted(lines_, id); }

Grid build_grid(const GridDataset& dataset) { return Grid(dataset); }

std::vector<std::vector<std::size_t>> component_indices(const Grid& grid) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(grid.bus_count(), false);
  for (std::size_t start = 0; start < grid.bus_count(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> component;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      component.push_back(u);
      for (const auto& inc : grid.incident(u)) {
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = true;
          queue.push_back(inc.neighbor);
        }
      }
    }
    std::sort(component.begin(), component.end());
    out.push_back(std::move(component));
  }
  return out;
}

std::vector<std::vector<std::string>> undirected_components(const Grid& grid) {
  std::vector<std::vector<std::string>> out;
  for (const auto& component : component_indices(grid)) {
    auto& ids = out.emplace_back();
    ids.reserve(component.size());
    for (auto i : component) ids.push_back(grid.bus(i).id);
  }
  return out;
}

}  // namespace opengrid
