#include <random>

#include "doctest.h"
#include "opengrid/grid.hpp"
#include "support/support.hpp"

using namespace opengrid;
using support::NetBuilder;

TEST_SUITE("grid") {
  TEST_CASE("two buses one line") {
    NetBuilder b;
    b.bus("S1", 240).bus("S2", 240).line("L1", "S1", "S2", 240);
    const Grid g = build_grid(b.build());
    CHECK(g.bus_count() == 2);
    CHECK(g.line_count() == 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);
    CHECK(g.incident(0)[0].neighbor == 1);
  }

  TEST_CASE("triangle degrees") {
    NetBuilder b;
    b.bus("a", 240).bus("b", 240).bus("c", 240).line("ab", "a", "b", 240).line("bc", "b", "c", 240).line("ca", "c", "a",
                                                                                                         240);
    const Grid g = build_grid(b.build());
    for (std::size_t i = 0; i < 3; ++i) CHECK(g.degree(i) == 2);
  }

  TEST_CASE("parallel lines stay distinct") {
    NetBuilder b;
    b.bus("S1", 240).bus("S2", 240).line("L1", "S1", "S2", 240).line("L2", "S2", "S1", 240);
    const Grid g = build_grid(b.build());
    CHECK(g.degree(0) == 2);
    CHECK(g.degree(1) == 2);
    CHECK(g.incident(0)[0].line != g.incident(0)[1].line);
  }

  TEST_CASE("voltage classes") {
    CHECK(voltage_class(240) == voltage_class(500));
    CHECK(voltage_class(138) < voltage_class(240));
    CHECK(voltage_class(138) < voltage_class(500));
    CHECK(voltage_class(25) < voltage_class(69));
    CHECK(voltage_class(72) < voltage_class(138));
    CHECK(voltage_class(69) != voltage_class(72));

    // Total order matches kV order once 240 and 500 are merged.
    const double kvs[] = {4.16, 25, 69, 72, 138, 144, 240, 260, 500};
    auto merged = [](double kv) { return kv >= 240 && kv <= 500 ? 240.0 : kv; };
    for (double a : kvs) {
      for (double b : kvs) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK((voltage_class(a) < voltage_class(b)) == (merged(a) < merged(b)));
        CHECK((voltage_class(a) == voltage_class(b)) == (merged(a) == merged(b)));
      }
    }
  }

  TEST_CASE("components") {
    SUBCASE("connected triangle") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).bus("c", 240).line("1", "a", "b", 240).line("2", "b", "c", 240).line("3", "a", "c",
                                                                                                       240);
      const auto comps = undirected_components(build_grid(b.build()));
      REQUIRE(comps.size() == 1);
      CHECK(comps[0].size() == 3);
    }
    SUBCASE("two disjoint edges") {
      NetBuilder b;
      b.bus("a", 240).bus("b", 240).bus("c", 240).bus("d", 240).line("1", "a", "b", 240).line("2", "c", "d", 240);
      const auto comps = undirected_components(build_grid(b.build()));
      REQUIRE(comps.size() == 2);
      CHECK(comps[0] == std::vector<std::string>{"a", "b"});
      CHECK(comps[1] == std::vector<std::string>{"c", "d"});
    }
    SUBCASE("empty grid") {
      NetBuilder b;
      CHECK(undirected_components(build_grid(b.build())).empty());
    }
  }

  TEST_CASE("random graphs: symmetric adjacency, degree sum, partition") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const Grid g = build_grid(support::random_connected(rng, 40).build());
      std::size_t degree_sum = 0;
      std::vector<std::size_t> seen_per_line(g.line_count(), 0);
      for (std::size_t i = 0; i < g.bus_count(); ++i) {
        degree_sum += g.degree(i);
        for (const auto& inc : g.incident(i)) {
          ++seen_per_line[inc.line];
          CHECK(g.ends(inc.line).other(i) == inc.neighbor);
        }
      }
      CHECK(degree_sum == 2 * g.line_count());
      for (auto c : seen_per_line) CHECK(c == 2);
      const auto comps = component_indices(g);
      CHECK(comps.size() == 1);
      CHECK(comps[0].size() == g.bus_count());
    }
  }
}
