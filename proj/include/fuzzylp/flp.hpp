#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzylp/lp.hpp"
#include "fuzzylp/membership.hpp"

namespace fuzzylp {

/// Interval coefficient: the curve carries both the interval [v_a, v_b]
/// and the membership shape.  Defuzzifying at degree m yields the unique
/// value whose membership is m.
struct fuzzy_coeff {
  s_curve curve;
};

using coefficient = std::variant<double, fuzzy_coeff>;

bool is_fuzzy(const coefficient& c);

struct fuzzy_row {
  std::vector<coefficient> coeffs;
  relation rel = relation::less_equal;
  double rhs = 0.0;
  std::string label;
};

/// LP whose objective and <=-row coefficients may be fuzzy.  Fuzzy
/// entries are forbidden in >= and = rows.
struct fuzzy_linear_program {
  sense direction = sense::maximize;
  std::vector<coefficient> objective;
  std::vector<fuzzy_row> rows;
  std::vector<double> var_lower;
  std::vector<std::string> var_names;

  std::size_t num_vars() const { return objective.size(); }
  bool has_fuzzy_objective() const;
};

void validate(const fuzzy_linear_program& flp);

/// Crispifies the model: every fuzzy objective coefficient is replaced
/// by its inverse at alpha_obj, every fuzzy <=-row coefficient by its
/// inverse at alpha_con.  Under clamp, out-of-range degrees map to the
/// nearer interval endpoint; under strict they raise std::domain_error.
linear_program defuzzify_at(const fuzzy_linear_program& flp, double alpha_obj,
                            double alpha_con, range_policy policy);

struct sweep_record {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  solve_status status = solve_status::optimal;
  double objective = 0.0;  // G
  std::vector<double> x;
};

struct sweep_result {
  int m = 0;  // resolution tag carried through to reports
  std::vector<sweep_record> records;  // (alpha1 desc, alpha2 desc)
  double g_max = 0.0;
  double g_min = 0.0;
  int n_optimal = 0;
  int n_infeasible = 0;
  int n_unbounded = 0;
};

struct sweep_options {
  int num_threads = 0;  // 0 = OpenMP runtime default
  solve_options solver;
};

/// Solves the defuzzified model (clamp policy) at every point of the
/// alphas x alphas grid.  Grid points are independent; the OpenMP build
/// evaluates them in parallel and assembles records in grid order, so
/// the output is identical to sweep_serial bit for bit.
sweep_result sweep(const fuzzy_linear_program& flp,
                   const std::vector<double>& alphas, int m,
                   const sweep_options& opts = {});

/// Single-threaded reference implementation of sweep.
sweep_result sweep_serial(const fuzzy_linear_program& flp,
                          const std::vector<double>& alphas, int m,
                          const solve_options& solver = {});

struct satisfaction_result {
  double lambda = 0.0;
  std::vector<double> x;
  double achieved_objective = 0.0;
  double goal_lo = 0.0;
  double goal_hi = 0.0;
  int iterations = 0;  // bisection count
};

struct satisfaction_options {
  double tol = 1e-6;               // bracket width at termination
  int max_iterations = 60;
  std::optional<degree_range> bracket;  // defaults to the invertible range
  solve_options solver;
};

struct satisfaction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Maximum-satisfaction solve.  goal_lo / goal_hi are the crisp optima
/// with every fuzzy coefficient at its lower / upper endpoint; an
/// ascending logistic goal membership is built on that interval and the
/// largest degree lambda is found (by bisection) such that the model
/// defuzzified at lambda still attains the lambda-goal.  Throws
/// satisfaction_error when the goal interval is degenerate or the model
/// is infeasible at the lowest degree.
satisfaction_result max_satisfaction_solve(const fuzzy_linear_program& flp,
                                           const satisfaction_options& opts = {});

/// Coefficient conventions for cross-method comparisons.  `explicit_c`
/// substitutes a caller-supplied objective vector, which is how rounded
/// published coefficient sets are reproduced exactly.
struct convention {
  enum class kind { lower, mid, upper, at_degree, explicit_c };
  kind which = kind::mid;
  double degree = 0.5;              // only for at_degree
  std::vector<double> objective;    // only for explicit_c
  std::string label;
};

struct comparison_entry {
  std::string x_label;
  std::string convention_label;
  double objective = 0.0;
  bool feasible = true;
};

/// One entry per (x, convention) pair: objective value of x under the
/// convention's crisp coefficients, plus a feasibility flag against the
/// constraints realized under the same convention.  The default tol
/// absorbs the round-off of solution vectors published to two decimals.
std::vector<comparison_entry> compare_methods(
    const fuzzy_linear_program& flp,
    const std::vector<std::pair<std::string, std::vector<double>>>& x_list,
    const std::vector<convention>& conventions, double tol = 1e-4);

}  // namespace fuzzylp
