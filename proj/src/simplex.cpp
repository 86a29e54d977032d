#include "opengrid/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "opengrid/error.hpp"

namespace opengrid::lp {

void eliminate_column(std::vector<double>& tableau, std::size_t rows, std::size_t width, std::size_t pivot,
                      std::size_t column, ExecPolicy policy) {
  const double* prow = tableau.data() + pivot * width;
  auto update = [&](long long r) {
    if (static_cast<std::size_t>(r) == pivot) return;
    double* row = tableau.data() + static_cast<std::size_t>(r) * width;
    const double factor = row[column];
    if (factor == 0.0) return;
    for (std::size_t k = 0; k < width; ++k) row[k] -= factor * prow[k];
    row[column] = 0.0;
  };
  const auto n = static_cast<long long>(rows);
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static) if (rows * width > 20000)
    for (long long r = 0; r < n; ++r) update(r);
  } else {
    for (long long r = 0; r < n; ++r) update(r);
  }
}

SimplexResult solve_simplex(const LinearProgram& lp, std::span<const std::size_t> initial_basis,
                            const SimplexOptions& options) {
  const std::size_t m = lp.rows;
  const std::size_t n = lp.cols;
  const double tol = options.tolerance;
  if (lp.a.size() != m * n || lp.b.size() != m || lp.c.size() != n || initial_basis.size() != m) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent LP dimensions");
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.b[r] < 0.0) throw Error(ErrorCode::InvalidArgument, "rhs must be nonnegative");
    const std::size_t j = initial_basis[r];
    if (j >= n) throw Error(ErrorCode::InvalidArgument, "basis column out of range");
    for (std::size_t q = 0; q < m; ++q) {
      if (lp.at(q, j) != (q == r ? 1.0 : 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "initial basis column " + std::to_string(j) + " is not a unit column");
      }
    }
  }

  // Tableau rows 0..m-1 are constraints, row m holds reduced costs and -z.
  const std::size_t width = n + 1;
  std::vector<double> t((m + 1) * width, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) t[r * width + j] = lp.at(r, j);
    t[r * width + n] = lp.b[r];
  }
  double* obj = t.data() + m * width;
  for (std::size_t j = 0; j < n; ++j) obj[j] = lp.c[j];
  std::vector<std::size_t> basis(initial_basis.begin(), initial_basis.end());
  for (std::size_t r = 0; r < m; ++r) {
    const double cb = lp.c[basis[r]];
    if (cb == 0.0) continue;
    for (std::size_t k = 0; k < width; ++k) obj[k] -= cb * t[r * width + k];
  }

  const std::size_t cap = options.max_iterations ? options.max_iterations : 50 * (m + n) + 1000;
  SimplexResult result;
  std::size_t degenerate_run = 0;
  bool bland = false;

  for (;;) {
    std::size_t enter = n;
    double best = -tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (obj[j] < best) {
        enter = j;
        if (bland) break;
        best = obj[j];
      }
    }
    if (enter == n) break;

    if (result.iterations >= cap) {
      throw Error(ErrorCode::SolverStall, "simplex hit the iteration cap of " + std::to_string(cap));
    }

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double coef = t[r * width + enter];
      if (coef <= tol) continue;
      const double ratio = std::max(0.0, t[r * width + n]) / coef;
      if (leave == m) {
        leave = r;
        best_ratio = ratio;
        continue;
      }
      const double slack = 1e-12 * std::max(1.0, std::abs(best_ratio));
      if (ratio < best_ratio - slack || (ratio <= best_ratio + slack && basis[r] < basis[leave])) {
        best_ratio = std::min(ratio, best_ratio);
        leave = r;
      }
    }
    if (leave == m) {
      result.status = SimplexStatus::Unbounded;
      break;
    }

    if (best_ratio <= tol) {
      if (++degenerate_run >= options.degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    if (bland) ++result.bland_pivots;

    double* prow = t.data() + leave * width;
    const double pivot = prow[enter];
    for (std::size_t k = 0; k < width; ++k) prow[k] /= pivot;
    prow[enter] = 1.0;
    eliminate_column(t, m + 1, width, leave, enter, options.policy);
    basis[leave] = enter;
    ++result.iterations;
  }

  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    double v = t[r * width + n];
    if (v < 0.0 && v > -tol) v = 0.0;
    result.x[basis[r]] = v;
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.objective += lp.c[j] * result.x[j];
  result.min_reduced_cost = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.min_reduced_cost = std::min(result.min_reduced_cost, obj[j]);
  result.basis = std::move(basis);
  return result;
}

}  // namespace opengrid::lp
