#include "opengrid/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <ostream>
#include <unordered_set>

#include "opengrid/csv.hpp"
#include "opengrid/error.hpp"

namespace opengrid::dispatch {
namespace {

using direction::Orientation;

// Outgoing neighbour lists in bus-index order.
std::vector<std::vector<std::size_t>> successors(const Grid& grid, const Orientation& orientation) {
  std::vector<std::vector<std::size_t>> out(grid.bus_count());
  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    if (!orientation.is_set(e)) continue;
    out[orientation.from_bus(grid, e)].push_back(orientation.to_bus(grid, e));
  }
  for (auto& list : out) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return out;
}

std::vector<std::size_t> closure(const std::vector<std::vector<std::size_t>>& succ, std::size_t source) {
  std::vector<bool> seen(succ.size(), false);
  std::vector<std::size_t> out;
  std::deque<std::size_t> queue{source};
  seen[source] = true;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    out.push_back(u);
    for (auto v : succ[u]) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_total(const Orientation& orientation, const Grid& grid) {
  if (orientation.size() != grid.line_count() || !orientation.is_total()) {
    throw Error(ErrorCode::InvalidArgument, "orientation must direct every line");
  }
}

}  // namespace

SnapshotResult make_snapshot(const GridDataset& dataset, SnapshotMode mode,
                             const std::optional<std::filesystem::path>& snapshot_file) {
  if (mode == SnapshotMode::MaxCapacity) {
    SnapshotResult r;
    r.snapshot.mode = SnapshotMode::MaxCapacity;
    r.snapshot.label = "max-capacity";
    for (const auto& g : dataset.generators()) r.snapshot.output_mw.push_back(g.max_capacity_mw);
    return r;
  }
  if (!snapshot_file) throw Error(ErrorCode::InvalidArgument, "time-point mode needs a snapshot file");
  std::ifstream in(*snapshot_file, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + snapshot_file->string());
  auto r = make_snapshot(dataset, in, snapshot_file->string());
  r.snapshot.label = snapshot_file->stem().string();
  return r;
}

SnapshotResult make_snapshot(const GridDataset& dataset, std::istream& snapshot_csv, const std::string& label) {
  const auto t = csv::Table::read(snapshot_csv, label);
  const auto c_id = t.column("generator_id");
  const auto c_out = t.column("output_mw");
  const auto& gens = dataset.generators();

  SnapshotResult r;
  r.snapshot.mode = SnapshotMode::TimePoint;
  r.snapshot.label = label;
  r.snapshot.output_mw.assign(gens.size(), 0.0);
  std::vector<bool> listed(gens.size(), false);
  for (const auto& rec : t.records()) {
    const std::string id(t.field(rec, c_id));
    const auto it = std::lower_bound(gens.begin(), gens.end(), id,
                                     [](const GeneratorRecord& g, const std::string& key) { return g.id < key; });
    const std::string where = label + " row " + std::to_string(rec.number);
    if (it == gens.end() || it->id != id) {
      throw Error(ErrorCode::DanglingReference, where + ": unknown generator '" + id + "'");
    }
    const auto g = static_cast<std::size_t>(it - gens.begin());
    if (listed[g]) throw Error(ErrorCode::DuplicateId, where + ": generator '" + id + "' listed twice");
    listed[g] = true;
    const double value = csv::parse_number(t.field(rec, c_out), ErrorCode::NonNumericValue, t, rec, "output_mw");
    if (value < 0.0) throw Error(ErrorCode::MalformedRow, where + ": output_mw must be >= 0");
    if (value > it->max_capacity_mw) {
      r.warnings.push_back("generator '" + id + "' output " + csv::format_number(value) +
                           " MW exceeds its capacity " + csv::format_number(it->max_capacity_mw) + " MW");
    }
    r.snapshot.output_mw[g] = value;
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (!listed[g]) r.warnings.push_back("generator '" + gens[g].id + "' missing from snapshot; using 0 MW");
  }
  return r;
}

std::vector<std::size_t> reachable_buses(const Orientation& orientation, const Grid& grid, std::size_t source) {
  if (source >= grid.bus_count()) throw Error(ErrorCode::InvalidArgument, "bus index out of range");
  return closure(successors(grid, orientation), source);
}

BusLoad estimate_bus_load(const Grid& grid, std::span<const double> demand_index,
                          const GenerationSnapshot& snapshot, const Orientation& orientation, ExecPolicy policy) {
  require_total(orientation, grid);
  if (demand_index.size() != grid.bus_count()) {
    throw Error(ErrorCode::LengthMismatch, "demand index does not cover every bus");
  }
  const auto gen = bus_generation(grid, snapshot);
  const auto succ = successors(grid, orientation);

  std::vector<std::size_t> sources;
  for (std::size_t b = 0; b < grid.bus_count(); ++b) {
    if (gen[b] > 0.0) sources.push_back(b);
  }

  // Each generation bus yields its own share list; shares are summed in
  // generation-bus order afterwards so both policies add in the same order.
  struct Share {
    std::vector<std::size_t> buses;
    std::vector<double> mw;
    bool degenerate = false;
  };
  std::vector<Share> shares(sources.size());
  auto attribute = [&](long long k) {
    const auto idx = static_cast<std::size_t>(k);
    const std::size_t src = sources[idx];
    const double g = gen[src];
    Share& share = shares[idx];
    share.buses = closure(succ, src);
    double total = 0.0;
    for (auto r : share.buses) total += demand_index[r];
    if (!(total > 0.0)) {
      share.buses = {src};
      share.mw = {g};
      share.degenerate = true;
      return;
    }
    share.mw.reserve(share.buses.size());
    for (auto r : share.buses) share.mw.push_back(demand_index[r] / total * g);
  };
  const auto count = static_cast<long long>(sources.size());
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long long k = 0; k < count; ++k) attribute(k);
  } else {
    for (long long k = 0; k < count; ++k) attribute(k);
  }

  BusLoad out;
  out.load_mw.assign(grid.bus_count(), 0.0);
  for (std::size_t k = 0; k < shares.size(); ++k) {
    const auto& share = shares[k];
    for (std::size_t i = 0; i < share.buses.size(); ++i) out.load_mw[share.buses[i]] += share.mw[i];
    if (share.degenerate) {
      ++out.zero_index_generators;
      out.warnings.push_back("ZeroIndexSum: buses reachable from '" + grid.bus(sources[k]).id +
                             "' have zero demand index; output kept at the generation bus");
    }
  }
  return out;
}

FlowSolution solve_flow_lp(const Grid& grid, const Orientation& orientation, std::span<const double> bus_load,
                           const GenerationSnapshot& snapshot, const lp::SimplexOptions& options) {
  require_total(orientation, grid);
  const std::size_t n = grid.bus_count();
  const std::size_t m = grid.line_count();
  if (bus_load.size() != n) throw Error(ErrorCode::LengthMismatch, "bus load does not cover every bus");
  for (double l : bus_load) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw Error(ErrorCode::InvalidArgument, "bus loads must be finite and >= 0");
  }
  const auto capacity = bus_generation(grid, snapshot);
  std::vector<std::size_t> gen_buses;
  for (std::size_t b = 0; b < n; ++b) {
    if (capacity[b] > 0.0) gen_buses.push_back(b);
  }
  const std::size_t k = gen_buses.size();

  // Columns: flows | generation | eps | served | capacity slack.
  // Rows:    balance (n) | served = inflow + g - outflow (n) | g + slack = cap (k).
  const std::size_t col_g = m;
  const std::size_t col_eps = col_g + k;
  const std::size_t col_served = col_eps + n;
  const std::size_t col_slack = col_served + n;
  const std::size_t row_served = n;
  const std::size_t row_cap = 2 * n;
  lp::LinearProgram prog(2 * n + k, col_slack + k);

  for (std::size_t e = 0; e < m; ++e) {
    const auto from = orientation.from_bus(grid, e);
    const auto to = orientation.to_bus(grid, e);
    prog.at(to, e) += 1.0;
    prog.at(from, e) -= 1.0;
    prog.at(row_served + to, e) -= 1.0;
    prog.at(row_served + from, e) += 1.0;
  }
  for (std::size_t j = 0; j < k; ++j) {
    const auto b = gen_buses[j];
    prog.at(b, col_g + j) = 1.0;
    prog.at(row_served + b, col_g + j) = -1.0;
    prog.at(row_cap + j, col_g + j) = 1.0;
    prog.at(row_cap + j, col_slack + j) = 1.0;
    prog.b[row_cap + j] = capacity[b];
  }
  std::vector<std::size_t> basis(prog.rows);
  for (std::size_t i = 0; i < n; ++i) {
    prog.at(i, col_eps + i) = 1.0;
    prog.at(row_served + i, col_served + i) = 1.0;
    prog.b[i] = bus_load[i];
    prog.c[col_eps + i] = 1.0;
    basis[i] = col_eps + i;
    basis[row_served + i] = col_served + i;
  }
  for (std::size_t j = 0; j < k; ++j) basis[row_cap + j] = col_slack + j;

  const auto result = lp::solve_simplex(prog, basis, options);
  if (result.status != lp::SimplexStatus::Optimal) {
    throw Error(ErrorCode::SolverStall, "flow LP reported unbounded; the model is malformed");
  }

  FlowSolution sol;
  sol.flow_mw.assign(result.x.begin(), result.x.begin() + static_cast<std::ptrdiff_t>(m));
  sol.injection_mw.assign(n, 0.0);
  for (std::size_t j = 0; j < k; ++j) sol.injection_mw[gen_buses[j]] = result.x[col_g + j];
  sol.epsilon_mw.assign(result.x.begin() + static_cast<std::ptrdiff_t>(col_eps),
                        result.x.begin() + static_cast<std::ptrdiff_t>(col_eps + n));
  sol.load_mw.assign(bus_load.begin(), bus_load.end());
  sol.objective = 0.0;
  for (double eps : sol.epsilon_mw) sol.objective += eps;
  sol.iterations = result.iterations;
  sol.max_residual = max_balance_residual(grid, orientation, sol);
  return sol;
}

double max_balance_residual(const Grid& grid, const Orientation& orientation, const FlowSolution& solution) {
  std::vector<double> net(grid.bus_count(), 0.0);
  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    net[orientation.to_bus(grid, e)] += solution.flow_mw[e];
    net[orientation.from_bus(grid, e)] -= solution.flow_mw[e];
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.bus_count(); ++i) {
    const double r = net[i] + solution.injection_mw[i] + solution.epsilon_mw[i] - solution.load_mw[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

void write_flows(std::ostream& out, const Grid& grid, const Orientation& orientation, const FlowSolution& solution) {
  csv::write_row(out, {"line_id", "from_bus", "to_bus", "flow_mw"});
  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    csv::write_row(out, {grid.line(e).id, grid.bus(orientation.from_bus(grid, e)).id,
                         grid.bus(orientation.to_bus(grid, e)).id, csv::format_number(solution.flow_mw[e])});
  }
}

void write_bus_solution(std::ostream& out, const Grid& grid, const FlowSolution& solution) {
  csv::write_row(out, {"bus_id", "injection_mw", "load_mw", "epsilon_mw"});
  for (std::size_t i = 0; i < grid.bus_count(); ++i) {
    csv::write_row(out, {grid.bus(i).id, csv::format_number(solution.injection_mw[i]),
                         csv::format_number(solution.load_mw[i]), csv::format_number(solution.epsilon_mw[i])});
  }
}

void write_summary(std::ostream& out, const FlowSolution& solution, const Orientation& orientation) {
  double injected = 0.0, load = 0.0;
  for (double g : solution.injection_mw) injected += g;
  for (double l : solution.load_mw) load += l;
  out << "objective_mw " << csv::format_number(solution.objective) << '\n'
      << "max_residual_mw " << csv::format_number(solution.max_residual) << '\n'
      << "total_injection_mw " << csv::format_number(injected) << '\n'
      << "total_load_mw " << csv::format_number(load) << '\n'
      << "lines " << orientation.size() << '\n'
      << "directed_heuristic " << orientation.heuristic_count() << '\n'
      << "simplex_iterations " << solution.iterations << '\n'
      << "note per-line flows are one consistent allocation; only bus totals and the objective are unique\n";
}

}  // namespace opengrid::dispatch
