#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "fuzzylp/flp.hpp"

// Alpha-grid sweep.  Each grid point is an independent defuzzify+solve,
// which makes the grid the natural parallel kernel of the toolkit: the
// OpenMP path fills a preallocated record array by grid index and is
// bit-identical to the serial reference regardless of thread count.

namespace fuzzylp {
namespace {

std::vector<double> normalize_grid(const std::vector<double>& alphas) {
  if (alphas.empty()) {
    throw std::invalid_argument("sweep: alpha list is empty");
  }
  for (double a : alphas) {
    if (std::isnan(a) || a <= 0.0 || a > 1.0) {
      throw std::invalid_argument("sweep: alphas must lie in (0, 1]");
    }
  }
  std::vector<double> grid(alphas);
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

sweep_record eval_point(const fuzzy_linear_program& flp, double a1, double a2,
                        const solve_options& solver) {
  const solution s =
      solve(defuzzify_at(flp, a1, a2, range_policy::clamp), solver);
  sweep_record rec;
  rec.alpha1 = a1;
  rec.alpha2 = a2;
  rec.status = s.status;
  if (s.status == solve_status::optimal) {
    rec.objective = s.objective;
    rec.x = s.x;
  } else {
    rec.objective = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

void finalize(sweep_result& r) {
  r.g_max = std::numeric_limits<double>::quiet_NaN();
  r.g_min = std::numeric_limits<double>::quiet_NaN();
  for (const sweep_record& rec : r.records) {
    switch (rec.status) {
      case solve_status::optimal:
        ++r.n_optimal;
        if (std::isnan(r.g_max) || rec.objective > r.g_max) {
          r.g_max = rec.objective;
        }
        if (std::isnan(r.g_min) || rec.objective < r.g_min) {
          r.g_min = rec.objective;
        }
        break;
      case solve_status::infeasible: ++r.n_infeasible; break;
      case solve_status::unbounded: ++r.n_unbounded; break;
    }
  }
}

}  // namespace

sweep_result sweep_serial(const fuzzy_linear_program& flp,
                          const std::vector<double>& alphas, int m,
                          const solve_options& solver) {
  validate(flp);
  const std::vector<double> grid = normalize_grid(alphas);
  const std::size_t n = grid.size();

  sweep_result result;
  result.m = m;
  result.records.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      result.records[i * n + j] = eval_point(flp, grid[i], grid[j], solver);
    }
  }
  finalize(result);
  return result;
}

sweep_result sweep(const fuzzy_linear_program& flp,
                   const std::vector<double>& alphas, int m,
                   const sweep_options& opts) {
  validate(flp);
  const std::vector<double> grid = normalize_grid(alphas);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
  const int threads =
      opts.num_threads > 0 ? opts.num_threads : omp_get_max_threads();

  sweep_result result;
  result.m = m;
  result.records.resize(static_cast<std::size_t>(n * n));

  bool failed = false;
  std::string failure;
#pragma omp parallel for collapse(2) schedule(static) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      try {
        result.records[static_cast<std::size_t>(i * n + j)] =
            eval_point(flp, grid[static_cast<std::size_t>(i)],
                       grid[static_cast<std::size_t>(j)], opts.solver);
      } catch (const std::exception& e) {
#pragma omp critical
        {
          failed = true;
          failure = e.what();
        }
      }
    }
  }
  if (failed) {
    throw std::runtime_error("sweep: grid point failed: " + failure);
  }
  finalize(result);
  return result;
}

}  // namespace fuzzylp
