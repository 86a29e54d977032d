#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "opengrid/demand.hpp"
#include "opengrid/dispatch.hpp"
#include "opengrid/error.hpp"
#include "oracles/oracles.hpp"
#include "support/support.hpp"

using namespace opengrid;
using namespace opengrid::dispatch;
using direction::Direction;
using direction::Orientation;
using direction::Provenance;
using support::NetBuilder;

namespace {

// Orients each listed line away from the named bus.
Orientation orient_as(const Grid& g, const std::vector<std::pair<std::string, std::string>>& from) {
  Orientation o(g.line_count());
  for (const auto& [line, bus] : from) {
    const auto e = *g.line_index(line);
    o.set(e, {g.ends(e).a == *g.bus_index(bus) ? Direction::AtoB : Direction::BtoA, Provenance::BfsTree});
  }
  return o;
}

std::vector<double> loads(const Grid& g, const std::vector<std::pair<std::string, double>>& values) {
  std::vector<double> out(g.bus_count(), 0.0);
  for (const auto& [bus, v] : values) out[*g.bus_index(bus)] = v;
  return out;
}

double at(const Grid& g, const std::vector<double>& v, const std::string& bus) { return v[*g.bus_index(bus)]; }

void check_solution_invariants(const Grid& g, const Orientation& o, const FlowSolution& s) {
  CHECK(s.max_residual <= kBalanceTolerance);
  CHECK(max_balance_residual(g, o, s) <= kBalanceTolerance);
  double gsum = 0, lsum = 0, esum = 0;
  for (std::size_t i = 0; i < g.bus_count(); ++i) {
    CHECK(s.epsilon_mw[i] >= 0.0);
    CHECK(s.injection_mw[i] >= 0.0);
    gsum += s.injection_mw[i];
    lsum += s.load_mw[i];
    esum += s.epsilon_mw[i];
  }
  for (double f : s.flow_mw) CHECK(f >= 0.0);
  CHECK(std::abs(gsum - lsum + esum) <= 1e-6);
  CHECK(std::abs(s.objective - esum) <= 1e-9);
}

}  // namespace

TEST_SUITE("dispatch") {
  TEST_CASE("reachability") {
    NetBuilder b;
    b.bus("a", 240).bus("b", 240).bus("c", 240).bus("d", 240);
    b.line("ab", "a", "b", 240).line("ac", "a", "c", 240).line("bd", "b", "d", 240).line("cd", "c", "d", 240);
    const auto ds = b.build();
    const Grid g(ds);
    const auto chain = orient_as(g, {{"ab", "a"}, {"bd", "b"}});
    auto ids = [&](const std::vector<std::size_t>& v) {
      std::vector<std::string> out;
      for (auto i : v) out.push_back(g.bus(i).id);
      return out;
    };
    CHECK(ids(reachable_buses(chain, g, *g.bus_index("a"))) == std::vector<std::string>{"a", "b", "d"});
    CHECK(ids(reachable_buses(chain, g, *g.bus_index("d"))) == std::vector<std::string>{"d"});
    const auto diamond = orient_as(g, {{"ab", "a"}, {"ac", "a"}, {"bd", "b"}, {"cd", "c"}});
    CHECK(ids(reachable_buses(diamond, g, *g.bus_index("a"))) == std::vector<std::string>{"a", "b", "c", "d"});
  }

  TEST_CASE("bus load attribution") {
    SUBCASE("proportional to the demand index") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).line("ab", "a", "b", 240).gen("G", "a", 100);
      const auto ds = b.build();
      const Grid g(ds);
      const auto o = orient_as(g, {{"ab", "a"}});
      const std::vector<double> rdi{1, 3};
      for (auto policy : {ExecPolicy::Serial, ExecPolicy::Parallel}) {
        const auto bl = estimate_bus_load(g, rdi, support::max_snapshot(ds), o, policy);
        CHECK(at(g, bl.load_mw, "a") == doctest::Approx(25.0));
        CHECK(at(g, bl.load_mw, "b") == doctest::Approx(75.0));
        CHECK(bl.warnings.empty());
      }
    }
    SUBCASE("generator reaching only itself") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).line("ab", "a", "b", 240).gen("G", "a", 100);
      const auto ds = b.build();
      const Grid g(ds);
      const auto bl = estimate_bus_load(g, std::vector<double>{5, 0}, support::max_snapshot(ds),
                                        orient_as(g, {{"ab", "b"}}));
      CHECK(at(g, bl.load_mw, "a") == doctest::Approx(100.0));
      CHECK(at(g, bl.load_mw, "b") == 0.0);
    }
    SUBCASE("two generators superpose") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).line("ab", "a", "b", 240).line("ba", "b", "a", 240);
      b.gen("G1", "a", 50).gen("G2", "b", 50);
      const auto ds = b.build();
      const Grid g(ds);
      const auto bl = estimate_bus_load(g, std::vector<double>{1, 1}, support::max_snapshot(ds),
                                        orient_as(g, {{"ab", "a"}, {"ba", "b"}}));
      CHECK(at(g, bl.load_mw, "a") == doctest::Approx(50.0));
      CHECK(at(g, bl.load_mw, "b") == doctest::Approx(50.0));
    }
    SUBCASE("zero index sum keeps output at the generator bus") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).line("ab", "a", "b", 240).gen("G", "a", 70);
      const auto ds = b.build();
      const Grid g(ds);
      const auto bl = estimate_bus_load(g, std::vector<double>{0, 0}, support::max_snapshot(ds),
                                        orient_as(g, {{"ab", "a"}}));
      CHECK(at(g, bl.load_mw, "a") == doctest::Approx(70.0));
      CHECK(bl.zero_index_generators == 1);
      REQUIRE(bl.warnings.size() == 1);
      CHECK(bl.warnings[0].find("ZeroIndexSum") != std::string::npos);
    }
  }

  TEST_CASE("flow LP examples") {
    SUBCASE("two buses") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).line("ab", "a", "b", 240).gen("G", "a", 10);
      const auto ds = b.build();
      const Grid g(ds);
      const auto o = orient_as(g, {{"ab", "a"}});
      const auto s = solve_flow_lp(g, o, loads(g, {{"b", 10}}), support::max_snapshot(ds));
      CHECK(s.flow_mw[0] == doctest::Approx(10.0));
      CHECK(at(g, s.injection_mw, "a") == doctest::Approx(10.0));
      CHECK(s.objective == doctest::Approx(0.0));
      check_solution_invariants(g, o, s);
    }
    SUBCASE("chain with a deficit at the tail") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).bus("c", 240).line("ab", "a", "b", 240).line("bc", "b", "c", 240).gen("G", "a", 5);
      const auto ds = b.build();
      const Grid g(ds);
      const auto o = orient_as(g, {{"ab", "a"}, {"bc", "b"}});
      const auto s = solve_flow_lp(g, o, loads(g, {{"c", 8}}), support::max_snapshot(ds));
      CHECK(s.flow_mw[*g.line_index("ab")] == doctest::Approx(5.0));
      CHECK(s.flow_mw[*g.line_index("bc")] == doctest::Approx(5.0));
      CHECK(at(g, s.epsilon_mw, "c") == doctest::Approx(3.0));
      CHECK(at(g, s.epsilon_mw, "a") == 0.0);
      CHECK(s.objective == doctest::Approx(3.0));
      check_solution_invariants(g, o, s);
    }
    SUBCASE("diamond") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).bus("c", 240).bus("d", 240);
      b.line("ab", "a", "b", 240).line("ac", "a", "c", 240).line("bd", "b", "d", 240).line("cd", "c", "d", 240);
      b.gen("G", "a", 10);
      const auto ds = b.build();
      const Grid g(ds);
      const auto o = orient_as(g, {{"ab", "a"}, {"ac", "a"}, {"bd", "b"}, {"cd", "c"}});
      const auto s = solve_flow_lp(g, o, loads(g, {{"d", 10}}), support::max_snapshot(ds));
      CHECK(s.objective == doctest::Approx(0.0));
      CHECK(s.flow_mw[*g.line_index("ab")] + s.flow_mw[*g.line_index("ac")] == doctest::Approx(10.0));
      CHECK(s.flow_mw[*g.line_index("bd")] + s.flow_mw[*g.line_index("cd")] == doctest::Approx(10.0));
      check_solution_invariants(g, o, s);
    }
    SUBCASE("load against the flow direction is unserved") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).line("ab", "a", "b", 240).gen("G", "a", 10);
      const auto ds = b.build();
      const Grid g(ds);
      const auto o = orient_as(g, {{"ab", "b"}});
      const auto s = solve_flow_lp(g, o, loads(g, {{"b", 4}}), support::max_snapshot(ds));
      CHECK(s.objective == doctest::Approx(4.0));
      CHECK(at(g, s.epsilon_mw, "b") == doctest::Approx(4.0));
      check_solution_invariants(g, o, s);
    }
  }

  TEST_CASE("flow LP agrees with the min-cut oracle on small random instances") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> mw(0.0, 100.0);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 200; ++trial) {
      CAPTURE(trial);
      const auto ds = support::random_connected(rng, 6, 3).build();
      const Grid g(ds);
      if (g.line_count() > 8) continue;
      Orientation o(g.line_count());
      std::vector<std::pair<std::size_t, std::size_t>> arcs;
      for (std::size_t e = 0; e < g.line_count(); ++e) {
        const auto d = coin(rng) ? Direction::AtoB : Direction::BtoA;
        o.set(e, {d, Provenance::ResidualRandom});
        arcs.emplace_back(o.from_bus(g, e), o.to_bus(g, e));
      }
      GenerationSnapshot snap;
      for (std::size_t k = 0; k < ds.generators().size(); ++k) snap.output_mw.push_back(mw(rng));
      const auto cap = bus_generation(g, snap);
      std::vector<double> load(g.bus_count());
      for (auto& l : load) l = coin(rng) ? mw(rng) : 0.0;

      const auto s = solve_flow_lp(g, o, load, snap);
      const double expected = oracle::min_mismatch_by_cuts(g.bus_count(), arcs, cap, load);
      CHECK(std::abs(s.objective - expected) <= 1e-6);
      const double total_load = std::accumulate(load.begin(), load.end(), 0.0);
      const double total_cap = std::accumulate(cap.begin(), cap.end(), 0.0);
      CHECK(s.objective >= std::max(0.0, total_load - total_cap) - 1e-6);
      for (std::size_t i = 0; i < g.bus_count(); ++i) {
        CHECK(s.injection_mw[i] <= cap[i] + 1e-9);
        CHECK(s.epsilon_mw[i] <= load[i] + 1e-9);
      }
      check_solution_invariants(g, o, s);
    }
  }

  TEST_CASE("strongly connected instances reach the aggregate lower bound") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> mw(0.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
      NetBuilder b;
      const int n = 2 + trial % 6;
      for (int i = 0; i < n; ++i) b.bus("B" + std::to_string(i), 240);
      // A directed ring is strongly connected.
      for (int i = 0; i < n; ++i) b.line("L" + std::to_string(i), "B" + std::to_string(i), "B" + std::to_string((i + 1) % n), 240);
      for (int i = 0; i < n; i += 2) b.gen("G" + std::to_string(i), "B" + std::to_string(i), mw(rng));
      const auto ds = b.build();
      const Grid g(ds);
      std::vector<std::pair<std::string, std::string>> from;
      for (int i = 0; i < n; ++i) from.emplace_back("L" + std::to_string(i), "B" + std::to_string(i));
      const auto o = orient_as(g, from);
      std::vector<double> load(g.bus_count());
      for (auto& l : load) l = mw(rng);
      const auto snap = support::max_snapshot(ds);
      const auto cap = bus_generation(g, snap);
      const auto s = solve_flow_lp(g, o, load, snap);
      const double gap = std::accumulate(load.begin(), load.end(), 0.0) - std::accumulate(cap.begin(), cap.end(), 0.0);
      CHECK(std::abs(s.objective - std::max(0.0, gap)) <= 1e-6);
    }
  }

  TEST_CASE("pipeline on every fixture: balance holds and generation is conserved") {
    for (const auto& name : support::fixture_names()) {
      CAPTURE(name);
      const auto ds = ingest::load_dataset(support::fixture(name));
      const Grid g(ds);
      for (auto mode : {SnapshotMode::MaxCapacity, SnapshotMode::TimePoint}) {
        const auto snap = make_snapshot(ds, mode, support::fixture(name) / "Snapshot.csv").snapshot;
        const auto o = direction::orient_all(g, snap, 42).orientation;
        const auto idx = demand::allocate_demand_index(ds);
        const auto bl = estimate_bus_load(g, idx.rdi, snap, o);
        const double gen = std::accumulate(snap.output_mw.begin(), snap.output_mw.end(), 0.0);
        const double attributed = std::accumulate(bl.load_mw.begin(), bl.load_mw.end(), 0.0);
        CHECK(std::abs(gen - attributed) <= 1e-9 * std::max(1.0, gen));
        const auto s = solve_flow_lp(g, o, bl.load_mw, snap);
        check_solution_invariants(g, o, s);
        // Every load was attributed along reachable paths, so all of it can be served.
        CHECK(s.objective <= 1e-6);
      }
    }
  }

  TEST_CASE("snapshots") {
    NetBuilder b;
    b.bus("S1", 240).gen("G1", "S1", 815).gen("G2", "S1", 400);
    const auto ds = b.build();
    SUBCASE("max capacity") {
      const auto r = make_snapshot(ds, SnapshotMode::MaxCapacity);
      CHECK(r.snapshot.output_mw == std::vector<double>{815, 400});
      CHECK(r.warnings.empty());
    }
    SUBCASE("missing generator defaults to zero with a warning") {
      std::istringstream in("generator_id,output_mw\nG1,100\n");
      const auto r = make_snapshot(ds, in, "morning");
      CHECK(r.snapshot.mode == SnapshotMode::TimePoint);
      CHECK(r.snapshot.output_mw == std::vector<double>{100, 0});
      REQUIRE(r.warnings.size() == 1);
      CHECK(r.warnings[0].find("G2") != std::string::npos);
    }
    SUBCASE("output above nameplate is kept with a warning") {
      std::istringstream in("generator_id,output_mw\nG1,900\nG2,10\n");
      const auto r = make_snapshot(ds, in, "peak");
      CHECK(r.snapshot.output_mw == std::vector<double>{900, 10});
      CHECK(r.warnings.size() == 1);
    }
    SUBCASE("unknown generator") {
      std::istringstream in("generator_id,output_mw\nG9,1\n");
      CHECK_THROWS_AS(make_snapshot(ds, in, "x"), Error);
    }
  }

  TEST_CASE("solution writers") {
    const auto ds = ingest::load_dataset(support::fixture("two_bus"));
    const Grid g(ds);
    const auto snap = make_snapshot(ds, SnapshotMode::MaxCapacity).snapshot;
    const auto o = direction::orient_all(g, snap, 42).orientation;
    const auto bl = estimate_bus_load(g, demand::allocate_demand_index(ds).rdi, snap, o);
    const auto s = solve_flow_lp(g, o, bl.load_mw, snap);
    std::ostringstream flows, buses, summary;
    write_flows(flows, g, o, s);
    write_bus_solution(buses, g, s);
    write_summary(summary, s, o);
    CHECK(flows.str() == "line_id,from_bus,to_bus,flow_mw\nL1,S1,S2,50\n");
    CHECK(buses.str() == "bus_id,injection_mw,load_mw,epsilon_mw\nS1,100,50,0\nS2,0,50,0\n");
    CHECK(summary.str().find("objective_mw 0\n") != std::string::npos);
  }
}
