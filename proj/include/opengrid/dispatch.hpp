#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opengrid/dataset.hpp"
#include "opengrid/direction.hpp"
#include "opengrid/grid.hpp"
#include "opengrid/parallel.hpp"
#include "opengrid/simplex.hpp"
#include "opengrid/snapshot.hpp"

namespace opengrid::dispatch {

inline constexpr double kBalanceTolerance = 1e-6;

struct SnapshotResult {
  GenerationSnapshot snapshot;
  std::vector<std::string> warnings;
};

// MaxCapacity copies each generator's nameplate. TimePoint reads
// Snapshot.csv (generator_id,output_mw); generators absent from the file
// run at 0, outputs above nameplate are kept with a warning.
SnapshotResult make_snapshot(const GridDataset& dataset, SnapshotMode mode,
                             const std::optional<std::filesystem::path>& snapshot_file = std::nullopt);
SnapshotResult make_snapshot(const GridDataset& dataset, std::istream& snapshot_csv, const std::string& label);

// Directed closure from `source` (included), as sorted bus indices.
std::vector<std::size_t> reachable_buses(const direction::Orientation& orientation, const Grid& grid,
                                         std::size_t source);

struct BusLoad {
  std::vector<double> load_mw;  // per bus index
  std::vector<std::string> warnings;
  std::size_t zero_index_generators = 0;
};

// Spreads each generation bus's output over the buses it reaches, in
// proportion to their demand index. A generation bus whose reachable set has
// zero total index keeps its own output (ZeroIndexSum warning).
BusLoad estimate_bus_load(const Grid& grid, std::span<const double> demand_index,
                          const GenerationSnapshot& snapshot, const direction::Orientation& orientation,
                          ExecPolicy policy = ExecPolicy::Parallel);

struct FlowSolution {
  std::vector<double> flow_mw;       // per line, along its assigned direction
  std::vector<double> injection_mw;  // per bus
  std::vector<double> load_mw;       // per bus, the input loads
  std::vector<double> epsilon_mw;    // per bus, unserved load
  double objective = 0.0;
  double max_residual = 0.0;
  std::size_t iterations = 0;
};

// Minimizes total nodal mismatch:
//
//   min  sum_i eps_i
//   s.t. inflow_i + g_i - outflow_i + eps_i = load_i
//        0 <= g_i <= capacity_i (snapshot output at bus i)
//        0 <= eps_i <= load_i,  f >= 0 along the assigned direction
//
// eps_i <= load_i keeps the mismatch on the bus whose demand goes unserved;
// it does not change the optimal objective.
FlowSolution solve_flow_lp(const Grid& grid, const direction::Orientation& orientation,
                           std::span<const double> bus_load, const GenerationSnapshot& snapshot,
                           const lp::SimplexOptions& options = {});

// max_i |inflow_i + g_i - outflow_i + eps_i - load_i| recomputed from the
// solution vectors.
double max_balance_residual(const Grid& grid, const direction::Orientation& orientation,
                            const FlowSolution& solution);

void write_flows(std::ostream& out, const Grid& grid, const direction::Orientation& orientation,
                 const FlowSolution& solution);
void write_bus_solution(std::ostream& out, const Grid& grid, const FlowSolution& solution);
void write_summary(std::ostream& out, const FlowSolution& solution, const direction::Orientation& orientation);

}  // namespace opengrid::dispatch
