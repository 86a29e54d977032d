#include <random>

#include "doctest.h"
#include "opengrid/demand.hpp"
#include "opengrid/direction.hpp"
#include "opengrid/dispatch.hpp"
#include "opengrid/ingest.hpp"
#include "support/support.hpp"

using namespace opengrid;

namespace {

bool same_buses(const std::vector<BusRecord>& a, const std::vector<BusRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].id != b[i].id || a[i].planning_area_id != b[i].planning_area_id || a[i].is_urban != b[i].is_urban) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("region assignment: serial equals parallel") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> coord(-5.0, 105.0);
    support::NetBuilder b;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        b.area("A" + std::to_string(i) + std::to_string(j), i * 10.0, j * 10.0, i * 10.0 + 9.5, j * 10.0 + 9.5, 1);
      }
    }
    b.city("C", 0, 0, 50, 50);
    for (int k = 0; k < 5000; ++k) b.bus("B" + std::to_string(k), 138, coord(rng), coord(rng));
    const auto serial = ingest::assign_regions(b.raw.buses, b.raw.planning_areas, b.raw.cities, ExecPolicy::Serial);
    const auto parallel =
        ingest::assign_regions(b.raw.buses, b.raw.planning_areas, b.raw.cities, ExecPolicy::Parallel);
    CHECK(same_buses(serial, parallel));
  }

  TEST_CASE("dataset linking: serial equals parallel on every fixture") {
    for (const auto& name : support::fixture_names()) {
      CAPTURE(name);
      const auto s = ingest::load_dataset(support::fixture(name), ExecPolicy::Serial);
      const auto p = ingest::load_dataset(support::fixture(name), ExecPolicy::Parallel);
      CHECK(same_buses(s.buses(), p.buses()));
      REQUIRE(s.planning_areas().size() == p.planning_areas().size());
      for (std::size_t k = 0; k < s.planning_areas().size(); ++k) {
        CHECK(s.planning_areas()[k].population == p.planning_areas()[k].population);
      }
    }
  }

  TEST_CASE("orientation and bus loads: serial equals parallel") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      auto builder = support::random_connected(rng, 40, 20);
      const auto ds = builder.build();
      const Grid g(ds);
      const auto snap = support::max_snapshot(ds);
      const auto seed = rng();
      const auto s = direction::orient_all(g, snap, seed, ExecPolicy::Serial);
      const auto p = direction::orient_all(g, snap, seed, ExecPolicy::Parallel);
      std::ostringstream so, po;
      direction::write_orientation(so, g, s.orientation);
      direction::write_orientation(po, g, p.orientation);
      CHECK(so.str() == po.str());
      CHECK(s.warnings == p.warnings);

      std::vector<double> rdi(g.bus_count());
      std::uniform_real_distribution<double> u(0.0, 10.0);
      for (auto& v : rdi) v = u(rng);
      const auto ls = dispatch::estimate_bus_load(g, rdi, snap, s.orientation, ExecPolicy::Serial);
      const auto lp = dispatch::estimate_bus_load(g, rdi, snap, s.orientation, ExecPolicy::Parallel);
      CHECK(ls.load_mw == lp.load_mw);
    }
  }
}
