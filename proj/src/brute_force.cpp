#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fuzzylp/lp.hpp"

// Vertex-enumeration oracle.  Every n-subset of the constraint set
// (user rows, variable lower bounds, and an internal far-away box) is
// solved as a square linear system; feasible candidates are scored and
// the best one wins.  A best vertex that sits on the internal box and
// strictly beats every interior vertex exposes an unbounded objective.

namespace fuzzylp {
namespace {

constexpr double kBox = 1e9;

struct flat_row {
  std::vector<double> coeffs;
  relation rel = relation::less_equal;
  double rhs = 0.0;
  bool is_box = false;
};

// Gaussian elimination with partial pivoting; false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-11) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * out[c];
    out[r] = s / a[r][r];
  }
  return true;
}

bool satisfies(const flat_row& row, const std::vector<double>& x, double tol) {
  double lhs = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coeffs[j] * x[j];
  const double slack_tol = tol * (1.0 + std::abs(row.rhs));
  switch (row.rel) {
    case relation::less_equal: return lhs <= row.rhs + slack_tol;
    case relation::greater_equal: return lhs >= row.rhs - slack_tol;
    case relation::equal: return std::abs(lhs - row.rhs) <= slack_tol;
  }
  return false;
}

}  // namespace

solution brute_force_optimum(const linear_program& lp, double tol) {
  validate(lp);
  const std::size_t n = lp.num_vars();
  if (n > 6) {
    throw std::invalid_argument("brute_force_optimum: more than 6 variables");
  }
  if (lp.rows.size() + n > 12) {
    throw std::invalid_argument(
        "brute_force_optimum: more than 12 rows including variable bounds");
  }

  std::vector<double> lb(n, 0.0);
  if (!lp.var_lower.empty()) lb = lp.var_lower;

  std::vector<flat_row> all;
  for (const constraint_row& row : lp.rows) {
    all.push_back({row.coeffs, row.rel, row.rhs, false});
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> unit(n, 0.0);
    unit[j] = 1.0;
    all.push_back({unit, relation::greater_equal, lb[j], false});
    all.push_back({std::move(unit), relation::less_equal, kBox, true});
  }
  const std::size_t total = all.size();

  const double sign = lp.direction == sense::maximize ? 1.0 : -1.0;
  bool have_interior = false, have_boxed = false;
  double best_interior = 0.0, best_boxed = 0.0;
  std::vector<double> best_x;

  auto consider = [&](const std::vector<double>& x, bool boxed) {
    for (const flat_row& row : all) {
      if (!satisfies(row, x, tol)) return;
    }
    const double score = sign * evaluate_objective(lp.objective, x);
    if (boxed) {
      if (!have_boxed || score > best_boxed) {
        have_boxed = true;
        best_boxed = score;
      }
    } else if (!have_interior || score > best_interior) {
      have_interior = true;
      best_interior = score;
      best_x = x;
    }
  };

  if (n == 0) {
    consider({}, false);
  } else {
    std::vector<std::size_t> pick(n);
    for (std::size_t j = 0; j < n; ++j) pick[j] = j;
    auto advance = [&]() -> bool {
      std::size_t k = n;
      while (k-- > 0) {
        if (pick[k] != total - n + k) {
          ++pick[k];
          for (std::size_t r = k + 1; r < n; ++r) pick[r] = pick[r - 1] + 1;
          return true;
        }
      }
      return false;
    };
    do {
      std::vector<std::vector<double>> a(n);
      std::vector<double> b(n);
      bool boxed = false;
      for (std::size_t k = 0; k < n; ++k) {
        a[k] = all[pick[k]].coeffs;
        b[k] = all[pick[k]].rhs;
        boxed = boxed || all[pick[k]].is_box;
      }
      std::vector<double> x;
      if (solve_square(std::move(a), std::move(b), x)) consider(x, boxed);
    } while (advance());
  }

  solution result;
  if (!have_interior && !have_boxed) {
    result.status = solve_status::infeasible;
    return result;
  }
  const double margin =
      1e-6 * (1.0 + (have_interior ? std::abs(best_interior) : 0.0));
  if (have_boxed && (!have_interior || best_boxed > best_interior + margin)) {
    result.status = solve_status::unbounded;
    return result;
  }
  result.status = solve_status::optimal;
  result.x = best_x;
  result.objective = evaluate_objective(lp.objective, best_x);
  return result;
}

}  // namespace fuzzylp
