#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fuzzylp {

enum class sense { maximize, minimize };
enum class relation { less_equal, greater_equal, equal };
enum class solve_status { optimal, infeasible, unbounded };

std::string to_string(solve_status s);
std::string to_string(relation r);

struct constraint_row {
  std::vector<double> coeffs;
  relation rel = relation::less_equal;
  double rhs = 0.0;
  std::string label;
};

/// Dense crisp LP.  Variables are bounded below by var_lower (all zero
/// when the vector is empty) and unbounded above except through rows.
struct linear_program {
  sense direction = sense::maximize;
  std::vector<double> objective;
  std::vector<constraint_row> rows;
  std::vector<double> var_lower;
  std::vector<std::string> var_names;

  std::size_t num_vars() const { return objective.size(); }
};

struct solution {
  solve_status status = solve_status::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

struct solve_options {
  double feas_tol = 1e-7;   // absolute tolerance on row slack
  double price_tol = 1e-9;  // reduced-cost threshold for entering columns
  int max_iterations = 0;   // 0 selects an automatic bound
};

/// Throws std::invalid_argument on dimension mismatches or non-finite data.
void validate(const linear_program& lp);

/// Two-phase dense simplex with Bland's rule.  Deterministic: identical
/// inputs produce bit-identical solutions.  Throws std::runtime_error if
/// the iteration bound is exceeded.
solution solve(const linear_program& lp, const solve_options& opts = {});

/// Sum of c[j] * x[j].  Throws std::invalid_argument on length mismatch.
double evaluate_objective(const std::vector<double>& c,
                          const std::vector<double>& x);

struct row_report {
  double slack = 0.0;  // violated iff slack < -tol
  bool satisfied = true;
};

struct feasibility_report {
  std::vector<row_report> rows;
  bool bounds_ok = true;
  bool feasible = true;
};

/// Per-row slack report for a candidate point.  Slack is rhs - a.x for
/// <= rows, a.x - rhs for >= rows and -|a.x - rhs| for = rows, so a row
/// is violated exactly when its slack drops below -tol.
feasibility_report check_feasible(const linear_program& lp,
                                  const std::vector<double>& x, double tol);

/// Exhaustive vertex-enumeration oracle: solves every square active-set
/// system, keeps the best feasible vertex.  Intended as ground truth for
/// small models; throws std::invalid_argument beyond 6 variables or 12
/// rows (variable bound rows included).
solution brute_force_optimum(const linear_program& lp, double tol = 1e-7);

}  // namespace fuzzylp
