#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opengrid/grid.hpp"
#include "opengrid/parallel.hpp"
#include "opengrid/random.hpp"
#include "opengrid/snapshot.hpp"

// Line-flow direction recovery.
//
// Stage 1 applies three local rules per line, in precedence order:
//   generator-as-source  an endpoint with positive generation pushes power out
//   two-end voltage      power flows from the higher voltage class to the lower
//   line voltage         a bus below the line's class does not feed the line
// Stage 2 takes the connected pieces left undirected, picks entry buses for
// each and orients a multi-source BFS forest outward from them. Non-tree
// lines get a seeded random direction.
namespace opengrid::direction {

enum class Direction : std::uint8_t { AtoB, BtoA };

enum class Provenance : std::uint8_t {
  TwoEndVoltage,
  LineVoltage,
  GeneratorSource,
  SpecialFreeFlow,
  BothEndsGeneratorRandom,
  BfsTree,
  ResidualRandom,
};

std::string_view to_string(Direction d);
std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

// True for directions fixed by the stage-1 rules.
bool is_heuristic(Provenance p);

struct LineDirection {
  Direction direction;
  Provenance provenance;

  friend bool operator==(const LineDirection&, const LineDirection&) = default;
};

struct Conflict {
  std::size_t line;
  std::string detail;
};

class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::size_t line_count) : entries_(line_count), deferred_(line_count, false) {}

  std::size_t size() const { return entries_.size(); }
  const std::optional<LineDirection>& at(std::size_t line) const { return entries_[line]; }
  bool is_set(std::size_t line) const { return entries_[line].has_value(); }
  void set(std::size_t line, LineDirection d) { entries_[line] = d; }
  void clear(std::size_t line) { entries_[line].reset(); }

  // Lines whose class is below both endpoints; left for stage 2.
  bool deferred(std::size_t line) const { return deferred_[line]; }
  void mark_deferred(std::size_t line) { deferred_[line] = true; }

  std::size_t directed_count() const;
  bool is_total() const { return directed_count() == size(); }
  std::size_t count(Provenance p) const;
  std::size_t heuristic_count() const;

  // Endpoint indices in flow order. Precondition: is_set(line).
  std::size_t from_bus(const Grid& grid, std::size_t line) const;
  std::size_t to_bus(const Grid& grid, std::size_t line) const;

  const std::vector<Conflict>& conflicts() const { return conflicts_; }
  void add_conflict(Conflict c) { conflicts_.push_back(std::move(c)); }

  friend bool operator==(const Orientation& a, const Orientation& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<std::optional<LineDirection>> entries_;
  std::vector<bool> deferred_;
  std::vector<Conflict> conflicts_;
};

// Stage 1. Random draws for lines with active generators at both ends come
// from stream 0 of the seed, in line order.
Orientation apply_heuristics(const Grid& grid, const GenerationSnapshot& snapshot, std::uint64_t seed);

struct Subgraph {
  std::vector<std::size_t> buses;  // sorted
  std::vector<std::size_t> lines;  // sorted
};

// Connected components over the lines still undirected in `partial`,
// ordered by smallest bus index.
std::vector<Subgraph> residual_subgraphs(const Grid& grid, const Orientation& partial);

struct EntryPoints {
  std::vector<std::size_t> buses;  // sorted, nonempty
  bool fallback = false;           // no rule matched; lowest bus used
};

// Union of: the buses in the top voltage class (only when the subgraph spans
// more than one class), buses with positive generation, and buses fed by a
// line already directed into them.
EntryPoints entry_points(const Subgraph& sub, const Grid& grid, const std::vector<double>& bus_gen,
                         const Orientation& partial);

struct OrientedLine {
  std::size_t line;
  LineDirection direction;
};

// Multi-source BFS: entries start at depth 0 in the given order, buses are
// dequeued FIFO and neighbours visited in bus-index order. A discovered edge
// u->v is a tree edge; remaining subgraph lines get rng coin flips.
std::vector<OrientedLine> bfs_orient(const Subgraph& sub, const Grid& grid,
                                     const std::vector<std::size_t>& entries, Xorshift64Star& rng);

struct OrientResult {
  Orientation orientation;
  std::vector<Subgraph> subgraphs;
  std::vector<EntryPoints> entries;
  std::vector<std::string> warnings;
};

// Full pipeline. Subgraph k draws from stream k + 1 of the seed, so the
// parallel and serial policies give identical orientations.
OrientResult orient_all(const Grid& grid, const GenerationSnapshot& snapshot, std::uint64_t seed,
                        ExecPolicy policy = ExecPolicy::Parallel);

// CSV: line_id,from_bus,to_bus,provenance
void write_orientation(std::ostream& out, const Grid& grid, const Orientation& orientation);
Orientation read_orientation(std::istream& in, const std::string& source, const Grid& grid);

}  // namespace opengrid::direction
