#include "opengrid/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "opengrid/csv.hpp"
#include "opengrid/demand.hpp"
#include "opengrid/diff.hpp"
#include "opengrid/direction.hpp"
#include "opengrid/dispatch.hpp"
#include "opengrid/error.hpp"
#include "opengrid/fetch.hpp"
#include "opengrid/grid.hpp"
#include "opengrid/ingest.hpp"
#include "opengrid/render.hpp"

namespace opengrid::cli {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string data_dir = ".";
  std::uint64_t seed = 42;
  double urban_share = demand::kDefaultUrbanShare;
  std::string mode = "max";
  std::string snapshot;
  std::string out;
  std::string format = "geojson";
  std::string manifest;
  std::string cache_dir;
  std::vector<std::string> orientation_files;
};

struct Summary {
  std::optional<double> objective;
  std::optional<double> max_residual;
  std::size_t lines = 0;
  std::optional<std::size_t> directed_heuristic;
  std::optional<std::size_t> changed;
};

void print_summary(std::ostream& err, const Summary& s) {
  auto num = [](const std::optional<double>& v) { return v ? csv::format_number(*v) : std::string("na"); };
  err << "objective=" << num(s.objective) << " max_residual=" << num(s.max_residual) << " lines=" << s.lines
      << " directed_heuristic=" << (s.directed_heuristic ? std::to_string(*s.directed_heuristic) : "na");
  if (s.changed) err << " changed=" << *s.changed;
  err << '\n';
}

class Session {
 public:
  Session(const Flags& flags, std::ostream& out, std::ostream& err) : f_(flags), out_(out), err_(err) {}

  int fetch();
  int validate();
  int orient();
  int similarity();
  int demand_index();
  int solve();
  int diff();
  int render();

 private:
  void load() {
    dataset_ = ingest::load_dataset(f_.data_dir);
    for (const auto& w : dataset_->warnings()) warn(w);
    grid_.emplace(*dataset_);
    summary_.lines = grid_->line_count();
  }

  void warn(const std::string& message) { err_ << "warning: " << message << '\n'; }

  GenerationSnapshot snapshot_for(bool timepoint) {
    std::optional<fs::path> file;
    if (!f_.snapshot.empty()) {
      file = f_.snapshot;
    } else if (timepoint) {
      file = fs::path(f_.data_dir) / "Snapshot.csv";
    }
    auto r = dispatch::make_snapshot(*dataset_, timepoint ? SnapshotMode::TimePoint : SnapshotMode::MaxCapacity,
                                     file);
    for (const auto& w : r.warnings) warn(w);
    return std::move(r.snapshot);
  }

  direction::Orientation orient_with(const GenerationSnapshot& snap) {
    auto r = direction::orient_all(*grid_, snap, f_.seed);
    for (const auto& w : r.warnings) warn(w);
    return std::move(r.orientation);
  }

  dispatch::FlowSolution solve_with(const GenerationSnapshot& snap, const direction::Orientation& orientation) {
    const auto index = demand::allocate_demand_index(*dataset_, f_.urban_share);
    for (const auto& a : index.flagged_areas) warn("planning area '" + a + "' holds no bus");
    auto load = dispatch::estimate_bus_load(*grid_, index.rdi, snap, orientation);
    for (const auto& w : load.warnings) warn(w);
    auto sol = dispatch::solve_flow_lp(*grid_, orientation, load.load_mw, snap);
    summary_.objective = sol.objective;
    summary_.max_residual = sol.max_residual;
    return sol;
  }

  // Writes to --out when given, otherwise to the artifact stream.
  void emit(const std::function<void(std::ostream&)>& write) {
    if (f_.out.empty()) {
      write(out_);
      return;
    }
    std::ofstream file(f_.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot write " + f_.out);
    write(file);
    if (!file) throw Error(ErrorCode::Io, "write failed for " + f_.out);
  }

  static void write_file(const fs::path& path, const std::function<void(std::ostream&)>& write) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write(file);
    if (!file) throw Error(ErrorCode::Io, "write failed for " + path.string());
  }

  int done() {
    print_summary(err_, summary_);
    return kExitOk;
  }

  bool timepoint() const { return f_.mode == "timepoint"; }

  const Flags& f_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<GridDataset> dataset_;
  std::optional<Grid> grid_;
  Summary summary_;
};

int Session::fetch() {
  if (f_.manifest.empty()) throw Error(ErrorCode::InvalidArgument, "fetch needs --manifest");
  const auto manifest = fetch::read_manifest(f_.manifest);
  const fs::path data_dir = f_.data_dir;
  const fs::path cache = f_.cache_dir.empty() ? data_dir / ".cache" : fs::path(f_.cache_dir);
  const auto cached = fetch::fetch_dataset(manifest, cache);
  fs::create_directories(data_dir);
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const fs::path dest = data_dir / manifest[i].name;
    if (fs::exists(dest)) {
      if (fetch::sha256_file(dest) != fetch::sha256_file(cached[i])) {
        throw Error(ErrorCode::InvalidArgument, "refusing to overwrite " + dest.string() + " with different content");
      }
    } else {
      fs::copy_file(cached[i], dest);
    }
    out_ << manifest[i].name << ' ' << dest.string() << '\n';
  }
  return done();
}

int Session::validate() {
  load();
  const auto report = ingest::validate_dataset(*dataset_);
  emit([&](std::ostream& o) {
    csv::write_row(o, {"kind", "subject", "detail"});
    for (const auto& finding : report.findings) {
      csv::write_row(o, {std::string(ingest::to_string(finding.kind)), finding.subject, finding.detail});
    }
  });
  return done();
}

int Session::orient() {
  load();
  const auto orientation = orient_with(snapshot_for(timepoint()));
  summary_.directed_heuristic = orientation.heuristic_count();
  emit([&](std::ostream& o) { direction::write_orientation(o, *grid_, orientation); });
  return done();
}

int Session::similarity() {
  load();
  const auto series = demand::read_load_series(f_.data_dir);
  const auto rows = demand::similarity_report(*dataset_, series);
  emit([&](std::ostream& o) { demand::write_similarity(o, rows); });
  return done();
}

int Session::demand_index() {
  load();
  const auto index = demand::allocate_demand_index(*dataset_, f_.urban_share);
  for (const auto& a : index.flagged_areas) warn("planning area '" + a + "' holds no bus");
  emit([&](std::ostream& o) { demand::write_demand_index(o, *dataset_, index); });
  return done();
}

int Session::solve() {
  load();
  const auto snap = snapshot_for(timepoint());
  const auto orientation = orient_with(snap);
  summary_.directed_heuristic = orientation.heuristic_count();
  const auto sol = solve_with(snap, orientation);
  if (f_.out.empty()) {
    dispatch::write_summary(out_, sol, orientation);
  } else {
    const fs::path dir = f_.out;
    fs::create_directories(dir);
    write_file(dir / "flows.csv", [&](std::ostream& o) { dispatch::write_flows(o, *grid_, orientation, sol); });
    write_file(dir / "buses.csv", [&](std::ostream& o) { dispatch::write_bus_solution(o, *grid_, sol); });
    write_file(dir / "summary.txt", [&](std::ostream& o) { dispatch::write_summary(o, sol, orientation); });
  }
  return done();
}

int Session::diff() {
  load();
  direction::Orientation before(0), after(0);
  if (f_.orientation_files.size() == 2) {
    auto read = [&](const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
      return direction::read_orientation(in, path, *grid_);
    };
    before = read(f_.orientation_files[0]);
    after = read(f_.orientation_files[1]);
  } else if (f_.orientation_files.empty()) {
    before = orient_with(snapshot_for(false));
    after = orient_with(snapshot_for(true));
    summary_.directed_heuristic = after.heuristic_count();
  } else {
    throw Error(ErrorCode::InvalidArgument, "diff takes two orientation files or none");
  }
  const auto d = analysis::direction_diff(*grid_, before, after);
  summary_.changed = d.changed_count();
  emit([&](std::ostream& o) { analysis::write_diff(o, *grid_, d); });
  return done();
}

int Session::render() {
  load();
  const auto snap = snapshot_for(timepoint());
  const auto orientation = orient_with(snap);
  summary_.directed_heuristic = orientation.heuristic_count();
  if (f_.format == "dot") {
    emit([&](std::ostream& o) { o << render::render_dot(*grid_, orientation); });
    return done();
  }
  const auto sol = solve_with(snap, orientation);
  if (f_.format == "svg") {
    emit([&](std::ostream& o) { o << render::render_svg(*grid_, orientation, &sol); });
  } else {
    emit([&](std::ostream& o) { o << render::render_geojson(*grid_, orientation, &sol).dump(2) << '\n'; });
  }
  return done();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"Directed transmission-network model from open grid data", "opengrid"};
  app.require_subcommand(1);
  app.add_option("--data-dir", flags.data_dir, "Directory holding the dataset CSV files");
  app.add_option("--seed", flags.seed, "Seed for the random orientation stages")->capture_default_str();
  app.add_option("--urban-share", flags.urban_share, "Share of area load assigned to urban buses")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--mode", flags.mode, "Generation snapshot: max or timepoint")
      ->capture_default_str()
      ->check(CLI::IsMember({"max", "timepoint"}));
  app.add_option("--snapshot", flags.snapshot, "Snapshot CSV (generator_id,output_mw)");
  app.add_option("--out", flags.out, "Output file (solve: output directory)");
  app.add_option("--format", flags.format, "Render format")
      ->capture_default_str()
      ->check(CLI::IsMember({"geojson", "dot", "svg"}));

  std::function<int(Session&)> action;
  auto sub = [&](const char* name, const char* help, int (Session::*fn)()) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&action, fn] { action = [fn](Session& session) { return (session.*fn)(); }; });
    return s;
  };
  auto* fetch_cmd = sub("fetch", "Download the files listed in a manifest into --data-dir", &Session::fetch);
  fetch_cmd->add_option("--manifest", flags.manifest, "Manifest file (name = url [sha256=<hex>])");
  fetch_cmd->add_option("--cache-dir", flags.cache_dir, "Download cache (default <data-dir>/.cache)");
  sub("validate", "Load the dataset and list consistency findings", &Session::validate);
  sub("orient", "Assign a direction to every line", &Session::orient);
  sub("similarity", "Population vs planning-area load similarity per year", &Session::similarity);
  sub("demand-index", "Relative demand index per bus", &Session::demand_index);
  sub("solve", "Orient, attribute load and solve the flow LP", &Session::solve);
  auto* diff_cmd = sub("diff", "Direction changes between two orientations or snapshot scenarios", &Session::diff);
  diff_cmd->add_option("orientations", flags.orientation_files, "Two orientation CSV files");
  sub("render", "Render the network as GeoJSON, DOT or SVG", &Session::render);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitValidation;
  }
  if (!action) {
    err << app.help();
    return kExitValidation;
  }

  try {
    Session session(flags, out, err);
    return action(session);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_validation() ? kExitValidation : kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace opengrid::cli
