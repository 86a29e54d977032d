#include "opengrid/direction.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <ostream>

#include "opengrid/csv.hpp"
#include "opengrid/error.hpp"

namespace opengrid {

std::vector<double> bus_generation(const Grid& grid, const GenerationSnapshot& snapshot) {
  if (snapshot.output_mw.size() != grid.generators().size()) {
    throw Error(ErrorCode::LengthMismatch, "snapshot has " + std::to_string(snapshot.output_mw.size()) +
                                               " outputs for " + std::to_string(grid.generators().size()) +
                                               " generators");
  }
  std::vector<double> out(grid.bus_count(), 0.0);
  for (std::size_t b = 0; b < grid.bus_count(); ++b) {
    for (auto g : grid.generators_at(b)) out[b] += snapshot.output_mw[g];
  }
  return out;
}

namespace direction {
namespace {

constexpr std::array<std::string_view, 7> kProvenanceNames = {
    "TwoEndVoltage",           "LineVoltage", "GeneratorSource", "SpecialFreeFlow",
    "BothEndsGeneratorRandom", "BfsTree",     "ResidualRandom"};

Direction flip(Direction d) { return d == Direction::AtoB ? Direction::BtoA : Direction::AtoB; }

Direction coin_direction(Xorshift64Star& rng) { return rng.coin() ? Direction::BtoA : Direction::AtoB; }

std::optional<Direction> two_end_voltage(VoltageClass a, VoltageClass b) {
  if (a > b) return Direction::AtoB;
  if (a < b) return Direction::BtoA;
  return std::nullopt;
}

std::optional<Direction> line_voltage(VoltageClass a, VoltageClass b, VoltageClass line) {
  const bool a_low = a < line;
  const bool b_low = b < line;
  if (a_low && !b_low) return Direction::BtoA;
  if (b_low && !a_low) return Direction::AtoB;
  return std::nullopt;
}

bool contains_sorted(const std::vector<std::size_t>& v, std::size_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::AtoB ? "AtoB" : "BtoA"; }

std::string_view to_string(Provenance p) { return kProvenanceNames[static_cast<std::size_t>(p)]; }

std::optional<Provenance> parse_provenance(std::string_view text) {
  for (std::size_t i = 0; i < kProvenanceNames.size(); ++i) {
    if (kProvenanceNames[i] == text) return static_cast<Provenance>(i);
  }
  return std::nullopt;
}

bool is_heuristic(Provenance p) {
  return p == Provenance::TwoEndVoltage || p == Provenance::LineVoltage ||
         p == Provenance::GeneratorSource || p == Provenance::BothEndsGeneratorRandom;
}

std::size_t Orientation::directed_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); }));
}

std::size_t Orientation::count(Provenance p) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [p](const auto& e) { return e && e->provenance == p; }));
}

std::size_t Orientation::heuristic_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const auto& e) { return e && is_heuristic(e->provenance); }));
}

std::size_t Orientation::from_bus(const Grid& grid, std::size_t line) const {
  const auto& ends = grid.ends(line);
  return entries_[line]->direction == Direction::AtoB ? ends.a : ends.b;
}

std::size_t Orientation::to_bus(const Grid& grid, std::size_t line) const {
  const auto& ends = grid.ends(line);
  return entries_[line]->direction == Direction::AtoB ? ends.b : ends.a;
}

Orientation apply_heuristics(const Grid& grid, const GenerationSnapshot& snapshot, std::uint64_t seed) {
  const auto gen = bus_generation(grid, snapshot);
  Orientation out(grid.line_count());
  auto rng = make_stream(seed, 0);

  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    const auto [a, b] = grid.ends(e);
    const VoltageClass ca = grid.bus_class(a);
    const VoltageClass cb = grid.bus_class(b);
    const VoltageClass cl = grid.line_class(e);
    const bool gen_a = gen[a] > 0.0;
    const bool gen_b = gen[b] > 0.0;
    const auto h1 = two_end_voltage(ca, cb);
    const auto h2 = line_voltage(ca, cb, cl);

    if (gen_a && gen_b) {
      out.set(e, {coin_direction(rng), Provenance::BothEndsGeneratorRandom});
      continue;
    }
    if (gen_a || gen_b) {
      const Direction d = gen_a ? Direction::AtoB : Direction::BtoA;
      out.set(e, {d, Provenance::GeneratorSource});
      if (h1 && *h1 == flip(d)) {
        out.add_conflict({e, "generator-as-source overrides two-end voltage on line '" + grid.line(e).id + "'"});
      } else if (h2 && *h2 == flip(d)) {
        out.add_conflict({e, "generator-as-source overrides line voltage on line '" + grid.line(e).id + "'"});
      }
      continue;
    }
    if (cl < ca && cl < cb) {
      out.mark_deferred(e);
      continue;
    }
    if (h1) {
      out.set(e, {*h1, Provenance::TwoEndVoltage});
    } else if (h2) {
      out.set(e, {*h2, Provenance::LineVoltage});
    }
  }
  return out;
}

std::vector<Subgraph> residual_subgraphs(const Grid& grid, const Orientation& partial) {
  std::vector<Subgraph> out;
  std::vector<bool> seen(grid.bus_count(), false);
  for (std::size_t start = 0; start < grid.bus_count(); ++start) {
    if (seen[start]) continue;
    const auto& inc = grid.incident(start);
    const bool has_open = std::any_of(inc.begin(), inc.end(),
                                      [&](const Incidence& i) { return !partial.is_set(i.line); });
    if (!has_open) continue;

    Subgraph sub;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      sub.buses.push_back(u);
      for (const auto& i : grid.incident(u)) {
        if (partial.is_set(i.line)) continue;
        sub.lines.push_back(i.line);
        if (!seen[i.neighbor]) {
          seen[i.neighbor] = true;
          queue.push_back(i.neighbor);
        }
      }
    }
    std::sort(sub.buses.begin(), sub.buses.end());
    std::sort(sub.lines.begin(), sub.lines.end());
    sub.lines.erase(std::unique(sub.lines.begin(), sub.lines.end()), sub.lines.end());
    out.push_back(std::move(sub));
  }
  return out;
}

EntryPoints entry_points(const Subgraph& sub, const Grid& grid, const std::vector<double>& bus_gen,
                         const Orientation& partial) {
  EntryPoints out;
  if (sub.buses.empty()) return out;

  VoltageClass top = grid.bus_class(sub.buses.front());
  VoltageClass bottom = top;
  for (auto b : sub.buses) {
    top = std::max(top, grid.bus_class(b));
    bottom = std::min(bottom, grid.bus_class(b));
  }
  const bool mixed = top != bottom;

  for (auto b : sub.buses) {
    bool entry = (mixed && grid.bus_class(b) == top) || bus_gen[b] > 0.0;
    if (!entry) {
      for (const auto& inc : grid.incident(b)) {
        if (partial.is_set(inc.line) && partial.to_bus(grid, inc.line) == b) {
          entry = true;
          break;
        }
      }
    }
    if (entry) out.buses.push_back(b);
  }
  if (out.buses.empty()) {
    out.buses.push_back(sub.buses.front());
    out.fallback = true;
  }
  return out;
}

std::vector<OrientedLine> bfs_orient(const Subgraph& sub, const Grid& grid,
                                     const std::vector<std::size_t>& entries, Xorshift64Star& rng) {
  std::vector<OrientedLine> out;
  out.reserve(sub.lines.size());
  std::vector<bool> visited(sub.buses.size(), false);
  std::vector<bool> tree(sub.lines.size(), false);
  auto local = [&](std::size_t bus) {
    return static_cast<std::size_t>(std::lower_bound(sub.buses.begin(), sub.buses.end(), bus) - sub.buses.begin());
  };

  std::deque<std::size_t> queue;
  for (auto b : entries) {
    if (!contains_sorted(sub.buses, b) || visited[local(b)]) continue;
    visited[local(b)] = true;
    queue.push_back(b);
  }
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto& inc : grid.incident(u)) {
      const auto pos = std::lower_bound(sub.lines.begin(), sub.lines.end(), inc.line);
      if (pos == sub.lines.end() || *pos != inc.line) continue;
      const auto v = inc.neighbor;
      if (visited[local(v)]) continue;
      visited[local(v)] = true;
      queue.push_back(v);
      tree[static_cast<std::size_t>(pos - sub.lines.begin())] = true;
      const Direction d = grid.ends(inc.line).a == u ? Direction::AtoB : Direction::BtoA;
      out.push_back({inc.line, {d, Provenance::BfsTree}});
    }
  }
  for (std::size_t k = 0; k < sub.lines.size(); ++k) {
    if (!tree[k]) out.push_back({sub.lines[k], {coin_direction(rng), Provenance::ResidualRandom}});
  }
  return out;
}

OrientResult orient_all(const Grid& grid, const GenerationSnapshot& snapshot, std::uint64_t seed,
                        ExecPolicy policy) {
  OrientResult result;
  const auto gen = bus_generation(grid, snapshot);
  result.orientation = apply_heuristics(grid, snapshot, seed);
  result.subgraphs = residual_subgraphs(grid, result.orientation);

  const auto count = static_cast<long long>(result.subgraphs.size());
  result.entries.resize(result.subgraphs.size());
  std::vector<std::vector<OrientedLine>> fragments(result.subgraphs.size());
  const Orientation& partial = result.orientation;

  auto orient_one = [&](long long k) {
    const auto idx = static_cast<std::size_t>(k);
    result.entries[idx] = entry_points(result.subgraphs[idx], grid, gen, partial);
    auto rng = make_stream(seed, static_cast<std::uint64_t>(k) + 1);
    fragments[idx] = bfs_orient(result.subgraphs[idx], grid, result.entries[idx].buses, rng);
  };
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < count; ++k) orient_one(k);
  } else {
    for (long long k = 0; k < count; ++k) orient_one(k);
  }

  for (std::size_t k = 0; k < fragments.size(); ++k) {
    if (result.entries[k].fallback) {
      result.warnings.push_back("NoEntryPoint: residual subgraph containing bus '" +
                                grid.bus(result.subgraphs[k].buses.front()).id +
                                "' has no entry bus; using it as the entry");
    }
    for (const auto& frag : fragments[k]) {
      LineDirection d = frag.direction;
      if (result.orientation.deferred(frag.line)) d.provenance = Provenance::SpecialFreeFlow;
      result.orientation.set(frag.line, d);
    }
  }
  for (const auto& c : result.orientation.conflicts()) result.warnings.push_back("ConflictFlag: " + c.detail);
  return result;
}

void write_orientation(std::ostream& out, const Grid& grid, const Orientation& orientation) {
  csv::write_row(out, {"line_id", "from_bus", "to_bus", "provenance"});
  for (std::size_t e = 0; e < grid.line_count(); ++e) {
    if (!orientation.is_set(e)) continue;
    csv::write_row(out, {grid.line(e).id, grid.bus(orientation.from_bus(grid, e)).id,
                         grid.bus(orientation.to_bus(grid, e)).id,
                         std::string(to_string(orientation.at(e)->provenance))});
  }
}

Orientation read_orientation(std::istream& in, const std::string& source, const Grid& grid) {
  const auto t = csv::Table::read(in, source);
  const auto c_line = t.column("line_id");
  const auto c_from = t.column("from_bus");
  const auto c_to = t.column("to_bus");
  const auto c_prov = t.column("provenance");

  Orientation out(grid.line_count());
  for (const auto& r : t.records()) {
    const std::string where = source + " row " + std::to_string(r.number);
    const auto e = grid.line_index(std::string(t.field(r, c_line)));
    if (!e) throw Error(ErrorCode::DanglingReference, where + ": unknown line '" + std::string(t.field(r, c_line)) + "'");
    if (out.is_set(*e)) throw Error(ErrorCode::DuplicateId, where + ": line listed twice");
    const auto prov = parse_provenance(t.field(r, c_prov));
    if (!prov) throw Error(ErrorCode::MalformedRow, where + ": unknown provenance");
    const auto& ends = grid.ends(*e);
    const std::string from(t.field(r, c_from));
    const std::string to(t.field(r, c_to));
    if (from == grid.bus(ends.a).id && to == grid.bus(ends.b).id) {
      out.set(*e, {Direction::AtoB, *prov});
    } else if (from == grid.bus(ends.b).id && to == grid.bus(ends.a).id) {
      out.set(*e, {Direction::BtoA, *prov});
    } else {
      throw Error(ErrorCode::MalformedRow, where + ": endpoints do not match the line");
    }
  }
  return out;
}

}  // namespace direction
}  // namespace opengrid
