#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opengrid/parallel.hpp"

// Dense tableau primal simplex for
//
//   minimize c'x  subject to  A x = b,  x >= 0,  b >= 0
//
// started from a caller-supplied basis of identity columns (slack-style
// columns), so no phase one is needed. Pricing is Dantzig's most-negative
// reduced cost; after a run of degenerate pivots it switches to Bland's
// smallest-index rule until the objective moves again, which rules out
// cycling.
namespace opengrid::lp {

struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major, rows * cols
  std::vector<double> b;
  std::vector<double> c;

  LinearProgram() = default;
  LinearProgram(std::size_t m, std::size_t n) : rows(m), cols(n), a(m * n, 0.0), b(m, 0.0), c(n, 0.0) {}

  double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
  double at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

struct SimplexOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 0;    // 0: 50 * (rows + cols) + 1000
  std::size_t degenerate_limit = 50;  // degenerate pivots before Bland's rule
  ExecPolicy policy = ExecPolicy::Parallel;
};

enum class SimplexStatus { Optimal, Unbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::Optimal;
  std::vector<double> x;
  std::vector<std::size_t> basis;
  double objective = 0.0;
  std::size_t iterations = 0;
  std::size_t bland_pivots = 0;
  double min_reduced_cost = 0.0;  // >= -tolerance at optimum (dual feasibility)
};

// Throws InvalidArgument when the basis is not a set of identity columns or
// b has a negative entry, SolverStall when the iteration cap is hit.
SimplexResult solve_simplex(const LinearProgram& lp, std::span<const std::size_t> initial_basis,
                            const SimplexOptions& options = {});

// Row elimination used by every pivot: row -= factor * pivot_row over all
// rows except `pivot`. Exposed for the kernel tests and benchmark.
void eliminate_column(std::vector<double>& tableau, std::size_t rows, std::size_t width, std::size_t pivot,
                      std::size_t column, ExecPolicy policy);

}  // namespace opengrid::lp
