#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fuzzylp/lp.hpp"

// Two-phase dense simplex.
//
// The model is first shifted to nonnegative variables (x = lb + y) and
// normalized so every rhs is nonnegative.  Columns are laid out as
// [y | slack/surplus | artificial]; <= rows start with their slack
// basic, >= and = rows with their artificial.  Phase 1 maximizes minus
// the artificial sum; phase 2 runs the real objective with artificial
// columns banned from entering.  Bland's rule (lowest eligible index
// entering, lowest basis index on ratio ties) makes the pivot sequence
// cycle-free and deterministic.

namespace fuzzylp {
namespace {

constexpr double kPivotTol = 1e-9;

struct tableau {
  std::size_t m = 0;      // rows
  std::size_t ncols = 0;  // structural + slack/surplus + artificial
  std::vector<std::vector<double>> body;
  std::vector<double> rhs;
  std::vector<int> basis;        // column basic in each row
  std::vector<double> cost;      // active objective, maximization
  std::vector<double> zrow;      // reduced costs z_j - c_j
  std::vector<char> banned;      // columns excluded from entering
  int iterations = 0;

  void pivot(std::size_t pr, std::size_t pc) {
    const double piv = body[pr][pc];
    for (std::size_t j = 0; j < ncols; ++j) body[pr][j] /= piv;
    rhs[pr] /= piv;
    body[pr][pc] = 1.0;  // keep the unit column exact
    for (std::size_t i = 0; i < m; ++i) {
      if (i == pr) continue;
      const double f = body[i][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ncols; ++j) body[i][j] -= f * body[pr][j];
      body[i][pc] = 0.0;
      rhs[i] -= f * rhs[pr];
    }
    const double fz = zrow[pc];
    if (fz != 0.0) {
      for (std::size_t j = 0; j < ncols; ++j) zrow[j] -= fz * body[pr][j];
      zrow[pc] = 0.0;
    }
    basis[pr] = static_cast<int>(pc);
    ++iterations;
  }

  // Rebuilds reduced costs for the current basis and cost vector.
  void price() {
    zrow.assign(ncols, 0.0);
    for (std::size_t j = 0; j < ncols; ++j) {
      double z = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        z += cost[static_cast<std::size_t>(basis[i])] * body[i][j];
      }
      zrow[j] = z - cost[j];
    }
  }

  double objective_value() const {
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      z += cost[static_cast<std::size_t>(basis[i])] * rhs[i];
    }
    return z;
  }
};

enum class phase_outcome { optimal, unbounded, iteration_limit };

phase_outcome run_simplex(tableau& t, double price_tol, int max_iterations) {
  for (;;) {
    if (t.iterations > max_iterations) return phase_outcome::iteration_limit;

    // Bland: smallest eligible column with negative reduced cost.
    std::size_t enter = t.ncols;
    for (std::size_t j = 0; j < t.ncols; ++j) {
      if (!t.banned[j] && t.zrow[j] < -price_tol) {
        enter = j;
        break;
      }
    }
    if (enter == t.ncols) return phase_outcome::optimal;

    std::size_t leave = t.m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.m; ++i) {
      const double a = t.body[i][enter];
      if (a <= kPivotTol) continue;
      const double ratio = std::max(t.rhs[i], 0.0) / a;
      if (ratio < best_ratio - kPivotTol ||
          (ratio < best_ratio + kPivotTol &&
           (leave == t.m || t.basis[i] < t.basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == t.m) return phase_outcome::unbounded;

    t.pivot(leave, enter);
  }
}

}  // namespace

solution solve(const linear_program& lp, const solve_options& opts) {
  validate(lp);
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.rows.size();

  std::vector<double> lb(n, 0.0);
  if (!lp.var_lower.empty()) lb = lp.var_lower;

  // Maximization costs; minimize by negating.
  std::vector<double> cmax(lp.objective);
  if (lp.direction == sense::minimize) {
    for (double& c : cmax) c = -c;
  }

  // Shift rhs by the lower bounds and normalize signs.
  struct norm_row {
    std::vector<double> coeffs;
    relation rel;
    double rhs;
  };
  std::vector<norm_row> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i].coeffs = lp.rows[i].coeffs;
    rows[i].rel = lp.rows[i].rel;
    rows[i].rhs = lp.rows[i].rhs - evaluate_objective(lp.rows[i].coeffs, lb);
    if (rows[i].rhs < 0.0) {
      for (double& a : rows[i].coeffs) a = -a;
      rows[i].rhs = -rows[i].rhs;
      if (rows[i].rel == relation::less_equal) {
        rows[i].rel = relation::greater_equal;
      } else if (rows[i].rel == relation::greater_equal) {
        rows[i].rel = relation::less_equal;
      }
    }
  }

  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const norm_row& r : rows) {
    if (r.rel != relation::equal) ++n_slack;  // slack or surplus
    if (r.rel != relation::less_equal) ++n_art;
  }

  tableau t;
  t.m = m;
  t.ncols = n + n_slack + n_art;
  t.body.assign(m, std::vector<double>(t.ncols, 0.0));
  t.rhs.resize(m);
  t.basis.assign(m, -1);
  t.banned.assign(t.ncols, 0);

  std::size_t slack_col = n;
  std::size_t art_col = n + n_slack;
  std::vector<char> is_artificial(t.ncols, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.body[i][j] = rows[i].coeffs[j];
    t.rhs[i] = rows[i].rhs;
    switch (rows[i].rel) {
      case relation::less_equal:
        t.body[i][slack_col] = 1.0;
        t.basis[i] = static_cast<int>(slack_col);
        ++slack_col;
        break;
      case relation::greater_equal:
        t.body[i][slack_col] = -1.0;
        ++slack_col;
        [[fallthrough]];
      case relation::equal:
        t.body[i][art_col] = 1.0;
        is_artificial[art_col] = 1;
        t.basis[i] = static_cast<int>(art_col);
        ++art_col;
        break;
    }
  }

  const int max_iterations =
      opts.max_iterations > 0
          ? opts.max_iterations
          : 10000 + 100 * static_cast<int>(t.ncols + m);

  solution result;

  if (n_art > 0) {
    t.cost.assign(t.ncols, 0.0);
    for (std::size_t j = 0; j < t.ncols; ++j) {
      if (is_artificial[j]) t.cost[j] = -1.0;
    }
    t.price();
    const phase_outcome out = run_simplex(t, opts.price_tol, max_iterations);
    if (out == phase_outcome::iteration_limit) {
      throw std::runtime_error(
          "simplex: phase 1 exceeded the iteration bound after " +
          std::to_string(t.iterations) + " pivots");
    }
    // Phase 1 maximizes -sum(artificials); unbounded cannot happen.
    if (t.objective_value() < -opts.feas_tol) {
      result.status = solve_status::infeasible;
      result.iterations = t.iterations;
      return result;
    }

    // Drive leftover artificials out of the basis; a row with no usable
    // pivot entry is redundant and gets dropped.
    for (std::size_t i = t.m; i-- > 0;) {
      if (!is_artificial[static_cast<std::size_t>(t.basis[i])]) continue;
      std::size_t pc = t.ncols;
      double best = kPivotTol;
      for (std::size_t j = 0; j < t.ncols; ++j) {
        if (is_artificial[j]) continue;
        const double a = std::abs(t.body[i][j]);
        if (a > best) {
          best = a;
          pc = j;
        }
      }
      if (pc < t.ncols) {
        t.pivot(i, pc);
      } else {
        t.body.erase(t.body.begin() + static_cast<std::ptrdiff_t>(i));
        t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        --t.m;
      }
    }
    for (std::size_t j = 0; j < t.ncols; ++j) {
      if (is_artificial[j]) t.banned[j] = 1;
    }
  }

  // Phase 2 on the real objective.
  t.cost.assign(t.ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j) t.cost[j] = cmax[j];
  t.price();
  const phase_outcome out = run_simplex(t, opts.price_tol, max_iterations);
  if (out == phase_outcome::iteration_limit) {
    throw std::runtime_error(
        "simplex: phase 2 exceeded the iteration bound after " +
        std::to_string(t.iterations) + " pivots");
  }
  if (out == phase_outcome::unbounded) {
    result.status = solve_status::unbounded;
    result.iterations = t.iterations;
    return result;
  }

  result.status = solve_status::optimal;
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < t.m; ++i) {
    const std::size_t j = static_cast<std::size_t>(t.basis[i]);
    if (j < n) result.x[j] = t.rhs[i];
  }
  for (std::size_t j = 0; j < n; ++j) result.x[j] += lb[j];
  result.objective = evaluate_objective(lp.objective, result.x);
  result.iterations = t.iterations;
  return result;
}

}  // namespace fuzzylp
