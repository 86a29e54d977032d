#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "opengrid/dataset.hpp"
#include "opengrid/ingest.hpp"
#include "opengrid/snapshot.hpp"

namespace support {

namespace fs = std::filesystem;

inline fs::path fixture(const std::string& name) { return fs::path(OPENGRID_FIXTURE_DIR) / name; }

inline std::vector<std::string> fixture_names() {
  return {"chain", "diamond", "islands", "mixed", "regional", "tri", "two_bus"};
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("opengrid_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// In-memory dataset assembly for tests.
struct NetBuilder {
  opengrid::RawDataset raw;

  NetBuilder& bus(const std::string& id, double kv, double x = 0.0, double y = 0.0) {
    raw.buses.push_back({id, id, {x, y}, kv, std::nullopt, false});
    return *this;
  }
  NetBuilder& line(const std::string& id, const std::string& a, const std::string& b, double kv) {
    raw.lines.push_back({id, a, b, kv, {}});
    return *this;
  }
  NetBuilder& gen(const std::string& id, const std::string& bus, double cap) {
    raw.generators.push_back({id, bus, cap, "GAS"});
    return *this;
  }
  NetBuilder& area(const std::string& id, double x0, double y0, double x1, double y1, double load) {
    raw.planning_areas.push_back(
        {id, id, opengrid::PlanarPolygon::from_rings({{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}})});
    raw.loads.push_back({id, id, load});
    return *this;
  }
  NetBuilder& city(const std::string& id, double x0, double y0, double x1, double y1) {
    raw.cities.push_back({id, id, opengrid::PlanarPolygon::from_rings({{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}})});
    return *this;
  }
  opengrid::GridDataset build(opengrid::ExecPolicy policy = opengrid::ExecPolicy::Serial) const {
    return opengrid::ingest::link_dataset(raw, policy);
  }
};

inline opengrid::GenerationSnapshot max_snapshot(const opengrid::GridDataset& ds) {
  opengrid::GenerationSnapshot s;
  for (const auto& g : ds.generators()) s.output_mw.push_back(g.max_capacity_mw);
  return s;
}

// Random connected network: spanning tree plus extra lines (parallel lines
// allowed), voltages drawn from common classes, a few generators.
inline NetBuilder random_connected(std::mt19937_64& rng, std::size_t max_buses, std::size_t max_extra = 0) {
  static constexpr double kv[] = {25, 69, 138, 240, 500};
  std::uniform_int_distribution<std::size_t> n_dist(2, max_buses);
  const std::size_t n = n_dist(rng);
  NetBuilder b;
  auto id = [](std::size_t i) {
    std::string s = std::to_string(i);
    return "B" + std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s;
  };
  std::uniform_int_distribution<int> kv_pick(0, 4);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  for (std::size_t i = 0; i < n; ++i) b.bus(id(i), kv[kv_pick(rng)], coord(rng), coord(rng));
  std::size_t line_no = 0;
  auto add_line = [&](std::size_t u, std::size_t v) {
    std::string s = std::to_string(line_no++);
    b.line("L" + std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s, id(u), id(v), kv[kv_pick(rng)]);
  };
  for (std::size_t i = 1; i < n; ++i) add_line(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i);
  const std::size_t extra = max_extra ? std::uniform_int_distribution<std::size_t>(0, max_extra)(rng) : n / 2;
  for (std::size_t k = 0; k < extra; ++k) {
    const auto u = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    auto v = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
    if (v >= u) ++v;
    add_line(u, v);
  }
  std::bernoulli_distribution has_gen(0.25);
  std::uniform_real_distribution<double> cap(0.0, 200.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (has_gen(rng)) b.gen("G" + id(i), id(i), std::bernoulli_distribution(0.2)(rng) ? 0.0 : cap(rng));
  }
  return b;
}

}  // namespace support
