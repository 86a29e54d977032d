// Serial reference vs OpenMP path for each parallel kernel.

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "opengrid/demand.hpp"
#include "opengrid/direction.hpp"
#include "opengrid/dispatch.hpp"
#include "opengrid/ingest.hpp"
#include "opengrid/simplex.hpp"
#include "opengrid/snapshot.hpp"

using namespace opengrid;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(1) ? ExecPolicy::Parallel : ExecPolicy::Serial;
}

PlanarPolygon square(double x0, double y0, double side) {
  return PlanarPolygon::from_rings({{{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}}});
}

struct RegionInput {
  std::vector<BusRecord> buses;
  std::vector<RegionBoundary> areas;
  std::vector<RegionBoundary> cities;
};

RegionInput region_input(std::size_t n_buses) {
  RegionInput in;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coord(0.0, 400.0);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const auto id = "A" + std::to_string(i * 20 + j);
      in.areas.push_back({id, id, square(i * 20.0, j * 20.0, 19.5)});
    }
  }
  for (int k = 0; k < 30; ++k) in.cities.push_back({"C" + std::to_string(k), "c", square(k * 13.0, k * 13.0, 8.0)});
  for (std::size_t k = 0; k < n_buses; ++k) {
    in.buses.push_back({"B" + std::to_string(k), "b", {coord(rng), coord(rng)}, 138, std::nullopt, false});
  }
  return in;
}

// Ladder-like network: a spanning chain plus random chords, generators on
// every tenth bus.
GridDataset network(std::size_t n) {
  RawDataset raw;
  std::mt19937_64 rng(2);
  static constexpr double kv[] = {69, 138, 240};
  std::uniform_int_distribution<int> pick(0, 2);
  auto id = [](std::size_t i) { return "B" + std::to_string(100000 + i); };
  for (std::size_t i = 0; i < n; ++i) raw.buses.push_back({id(i), id(i), {double(i), 0.0}, kv[pick(rng)], std::nullopt, false});
  std::size_t line = 0;
  auto add = [&](std::size_t a, std::size_t b) {
    raw.lines.push_back({"L" + std::to_string(100000 + line++), id(a), id(b), kv[pick(rng)], {}});
  };
  for (std::size_t i = 1; i < n; ++i) add(i - 1, i);
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const auto a = any(rng), b = any(rng);
    if (a != b) add(a, b);
  }
  for (std::size_t i = 0; i < n; i += 10) raw.generators.push_back({"G" + id(i), id(i), 100.0, "GAS"});
  return ingest::link_dataset(std::move(raw), ExecPolicy::Serial);
}

GenerationSnapshot max_snapshot(const GridDataset& ds) {
  GenerationSnapshot s;
  for (const auto& g : ds.generators()) s.output_mw.push_back(g.max_capacity_mw);
  return s;
}

void BM_AssignRegions(benchmark::State& state) {
  const auto in = region_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ingest::assign_regions(in.buses, in.areas, in.cities, policy_of(state)));
  }
}

void BM_EstimateBusLoad(benchmark::State& state) {
  const auto ds = network(static_cast<std::size_t>(state.range(0)));
  const Grid g(ds);
  const auto snap = max_snapshot(ds);
  const auto o = direction::orient_all(g, snap, 42, ExecPolicy::Serial).orientation;
  std::vector<double> rdi(g.bus_count(), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dispatch::estimate_bus_load(g, rdi, snap, o, policy_of(state)));
  }
}

void BM_EliminateColumn(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const std::size_t width = 2 * rows + 1;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> base(rows * width);
  for (auto& v : base) v = u(rng);
  for (auto _ : state) {
    state.PauseTiming();
    auto t = base;
    state.ResumeTiming();
    lp::eliminate_column(t, rows, width, 0, 0, policy_of(state));
    benchmark::DoNotOptimize(t.data());
  }
}

void BM_OrientAll(benchmark::State& state) {
  const auto ds = network(static_cast<std::size_t>(state.range(0)));
  const Grid g(ds);
  const auto snap = max_snapshot(ds);
  for (auto _ : state) {
    benchmark::DoNotOptimize(direction::orient_all(g, snap, 42, policy_of(state)));
  }
}

}  // namespace

BENCHMARK(BM_AssignRegions)->ArgsProduct({{1000, 20000}, {0, 1}})->ArgNames({"buses", "parallel"});
BENCHMARK(BM_EstimateBusLoad)->ArgsProduct({{500, 2000}, {0, 1}})->ArgNames({"buses", "parallel"});
BENCHMARK(BM_EliminateColumn)->ArgsProduct({{100, 800}, {0, 1}})->ArgNames({"rows", "parallel"});
BENCHMARK(BM_OrientAll)->ArgsProduct({{500, 5000}, {0, 1}})->ArgNames({"buses", "parallel"});

BENCHMARK_MAIN();
