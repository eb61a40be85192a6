#include "fuzzylp/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace fuzzylp {

std::string to_string(solve_status s) {
  switch (s) {
    case solve_status::optimal: return "optimal";
    case solve_status::infeasible: return "infeasible";
    case solve_status::unbounded: return "unbounded";
  }
  return "unknown";
}

std::string to_string(relation r) {
  switch (r) {
    case relation::less_equal: return "<=";
    case relation::greater_equal: return ">=";
    case relation::equal: return "=";
  }
  return "?";
}

void validate(const linear_program& lp) {
  const std::size_t n = lp.num_vars();
  for (double c : lp.objective) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("lp: non-finite objective coefficient");
    }
  }
  for (const constraint_row& row : lp.rows) {
    if (row.coeffs.size() != n) {
      throw std::invalid_argument("lp: row '" + row.label +
                                  "' has wrong coefficient count");
    }
    for (double a : row.coeffs) {
      if (!std::isfinite(a)) {
        throw std::invalid_argument("lp: non-finite coefficient in row '" +
                                    row.label + "'");
      }
    }
    if (!std::isfinite(row.rhs)) {
      throw std::invalid_argument("lp: non-finite rhs in row '" + row.label +
                                  "'");
    }
  }
  if (!lp.var_lower.empty() && lp.var_lower.size() != n) {
    throw std::invalid_argument("lp: var_lower has wrong length");
  }
  for (double lb : lp.var_lower) {
    if (!std::isfinite(lb)) {
      throw std::invalid_argument("lp: non-finite variable lower bound");
    }
  }
  if (!lp.var_names.empty() && lp.var_names.size() != n) {
    throw std::invalid_argument("lp: var_names has wrong length");
  }
}

double evaluate_objective(const std::vector<double>& c,
                          const std::vector<double>& x) {
  if (c.size() != x.size()) {
    throw std::invalid_argument("evaluate_objective: length mismatch");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) sum += c[j] * x[j];
  return sum;
}

feasibility_report check_feasible(const linear_program& lp,
                                  const std::vector<double>& x, double tol) {
  validate(lp);
  if (x.size() != lp.num_vars()) {
    throw std::invalid_argument("check_feasible: x has wrong length");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("check_feasible: tol must be positive");
  }

  feasibility_report report;
  report.rows.reserve(lp.rows.size());
  for (const constraint_row& row : lp.rows) {
    const double lhs = evaluate_objective(row.coeffs, x);
    double slack = 0.0;
    switch (row.rel) {
      case relation::less_equal: slack = row.rhs - lhs; break;
      case relation::greater_equal: slack = lhs - row.rhs; break;
      case relation::equal: slack = -std::abs(lhs - row.rhs); break;
    }
    const bool ok = slack >= -tol;
    report.rows.push_back({slack, ok});
    report.feasible = report.feasible && ok;
  }
  for (std::size_t j = 0; j < lp.var_lower.size(); ++j) {
    if (x[j] < lp.var_lower[j] - tol) report.bounds_ok = false;
  }
  if (lp.var_lower.empty()) {
    for (double xj : x) {
      if (xj < -tol) report.bounds_ok = false;
    }
  }
  report.feasible = report.feasible && report.bounds_ok;
  return report;
}

}  // namespace fuzzylp
