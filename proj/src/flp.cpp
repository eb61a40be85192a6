#include "fuzzylp/flp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fuzzylp {
namespace {

double crisp_at(const coefficient& c, double degree, range_policy policy) {
  if (const double* v = std::get_if<double>(&c)) return *v;
  const s_curve& s = std::get<fuzzy_coeff>(c).curve;
  if (policy == range_policy::strict) return inverse(s, degree);
  return inverse_clamped(s, degree).value;
}

enum class endpoint { lower, upper };

double crisp_endpoint(const coefficient& c, endpoint which) {
  if (const double* v = std::get_if<double>(&c)) return *v;
  const s_curve& s = std::get<fuzzy_coeff>(c).curve;
  return which == endpoint::lower ? s.v_a : s.v_b;
}

// Crisp model with every fuzzy coefficient pinned to one endpoint.
linear_program realize_endpoint(const fuzzy_linear_program& flp,
                                endpoint which) {
  linear_program lp;
  lp.direction = flp.direction;
  lp.var_lower = flp.var_lower;
  lp.var_names = flp.var_names;
  lp.objective.reserve(flp.objective.size());
  for (const coefficient& c : flp.objective) {
    lp.objective.push_back(crisp_endpoint(c, which));
  }
  for (const fuzzy_row& row : flp.rows) {
    constraint_row out;
    out.rel = row.rel;
    out.rhs = row.rhs;
    out.label = row.label;
    out.coeffs.reserve(row.coeffs.size());
    for (const coefficient& c : row.coeffs) {
      out.coeffs.push_back(crisp_endpoint(c, which));
    }
    lp.rows.push_back(std::move(out));
  }
  return lp;
}

void check_degree(double degree, range_policy policy, const char* what) {
  if (std::isnan(degree) || degree < 0.0 || degree > 1.0) {
    throw std::invalid_argument(std::string(what) +
                                " must be a degree in [0, 1]");
  }
  // Degree 0 is meaningful only under clamp (maps to the upper endpoint).
  if (policy == range_policy::strict && degree == 0.0) {
    throw std::invalid_argument(std::string(what) +
                                " must be positive under the strict policy");
  }
}

}  // namespace

bool is_fuzzy(const coefficient& c) {
  return std::holds_alternative<fuzzy_coeff>(c);
}

bool fuzzy_linear_program::has_fuzzy_objective() const {
  return std::any_of(objective.begin(), objective.end(),
                     [](const coefficient& c) { return is_fuzzy(c); });
}

void validate(const fuzzy_linear_program& flp) {
  const std::size_t n = flp.num_vars();
  for (const coefficient& c : flp.objective) {
    if (const fuzzy_coeff* f = std::get_if<fuzzy_coeff>(&c)) {
      validate(f->curve);
    } else if (!std::isfinite(std::get<double>(c))) {
      throw std::invalid_argument("flp: non-finite objective coefficient");
    }
  }
  for (const fuzzy_row& row : flp.rows) {
    if (row.coeffs.size() != n) {
      throw std::invalid_argument("flp: row '" + row.label +
                                  "' has wrong coefficient count");
    }
    for (const coefficient& c : row.coeffs) {
      if (const fuzzy_coeff* f = std::get_if<fuzzy_coeff>(&c)) {
        if (row.rel != relation::less_equal) {
          throw std::invalid_argument(
              "flp: fuzzy coefficients are only allowed in <= rows (row '" +
              row.label + "')");
        }
        validate(f->curve);
      } else if (!std::isfinite(std::get<double>(c))) {
        throw std::invalid_argument("flp: non-finite coefficient in row '" +
                                    row.label + "'");
      }
    }
    if (!std::isfinite(row.rhs)) {
      throw std::invalid_argument("flp: non-finite rhs in row '" + row.label +
                                  "'");
    }
  }
  if (!flp.var_lower.empty() && flp.var_lower.size() != n) {
    throw std::invalid_argument("flp: var_lower has wrong length");
  }
  if (!flp.var_names.empty() && flp.var_names.size() != n) {
    throw std::invalid_argument("flp: var_names has wrong length");
  }
}

linear_program defuzzify_at(const fuzzy_linear_program& flp, double alpha_obj,
                            double alpha_con, range_policy policy) {
  validate(flp);
  check_degree(alpha_obj, policy, "alpha_obj");
  check_degree(alpha_con, policy, "alpha_con");

  linear_program lp;
  lp.direction = flp.direction;
  lp.var_lower = flp.var_lower;
  lp.var_names = flp.var_names;
  lp.objective.reserve(flp.objective.size());
  for (const coefficient& c : flp.objective) {
    lp.objective.push_back(crisp_at(c, alpha_obj, policy));
  }
  for (const fuzzy_row& row : flp.rows) {
    constraint_row out;
    out.rel = row.rel;
    out.rhs = row.rhs;
    out.label = row.label;
    out.coeffs.reserve(row.coeffs.size());
    for (const coefficient& c : row.coeffs) {
      out.coeffs.push_back(crisp_at(c, alpha_con, policy));
    }
    lp.rows.push_back(std::move(out));
  }
  return lp;
}

satisfaction_result max_satisfaction_solve(const fuzzy_linear_program& flp,
                                           const satisfaction_options& opts) {
  validate(flp);
  if (!(opts.tol > 0.0) || !(opts.tol < 0.1)) {
    throw std::invalid_argument(
        "max_satisfaction_solve: tol must lie in (0, 0.1)");
  }
  if (!flp.has_fuzzy_objective()) {
    throw satisfaction_error(
        "max_satisfaction_solve: objective has no fuzzy coefficients");
  }

  const solution at_lower = solve(realize_endpoint(flp, endpoint::lower),
                                  opts.solver);
  const solution at_upper = solve(realize_endpoint(flp, endpoint::upper),
                                  opts.solver);
  if (at_lower.status != solve_status::optimal ||
      at_upper.status != solve_status::optimal) {
    throw satisfaction_error(
        "max_satisfaction_solve: endpoint model not optimal (" +
        to_string(at_lower.status) + " / " + to_string(at_upper.status) + ")");
  }
  const double goal_lo = at_lower.objective;
  const double goal_hi = at_upper.objective;
  if (!(goal_lo < goal_hi)) {
    throw satisfaction_error(
        "max_satisfaction_solve: degenerate goal interval [" +
        std::to_string(goal_lo) + ", " + std::to_string(goal_hi) + "]");
  }

  // Goal membership: the coefficient curve family mirrored to ascend on
  // [goal_lo, goal_hi], so satisfaction ~0.001 at goal_lo and ~0.999 at
  // goal_hi under the canonical parameters.  Curve shape is taken from
  // the first fuzzy objective coefficient.
  s_curve goal_curve;
  for (const coefficient& c : flp.objective) {
    if (const fuzzy_coeff* f = std::get_if<fuzzy_coeff>(&c)) {
      goal_curve = f->curve;
      break;
    }
  }
  goal_curve.v_a = goal_lo;
  goal_curve.v_b = goal_hi;
  auto goal_value = [&](double lambda) {
    return goal_hi - (inverse(goal_curve, lambda) - goal_lo);
  };

  // Bisect inside every curve's invertible range so the strict policy
  // never fires mid-search.
  degree_range range = valid_range(goal_curve);
  auto shrink = [&](const coefficient& c) {
    if (const fuzzy_coeff* f = std::get_if<fuzzy_coeff>(&c)) {
      const degree_range r = valid_range(f->curve);
      range.lo = std::max(range.lo, r.lo);
      range.hi = std::min(range.hi, r.hi);
    }
  };
  for (const coefficient& c : flp.objective) shrink(c);
  for (const fuzzy_row& row : flp.rows) {
    for (const coefficient& c : row.coeffs) shrink(c);
  }
  if (opts.bracket) {
    range.lo = std::max(range.lo, opts.bracket->lo);
    range.hi = std::min(range.hi, opts.bracket->hi);
  }
  const double inset = 1e-9 * (range.hi - range.lo);
  double lo = range.lo + inset;
  double hi = range.hi - inset;
  if (!(lo < hi)) {
    throw satisfaction_error("max_satisfaction_solve: empty degree bracket");
  }

  solution witness;
  auto attains = [&](double lambda) {
    const solution s = solve(defuzzify_at(flp, lambda, lambda,
                                          range_policy::strict),
                             opts.solver);
    if (s.status == solve_status::optimal && s.objective >= goal_value(lambda)) {
      witness = s;
      return true;
    }
    return false;
  };

  if (!attains(lo)) {
    throw satisfaction_error(witness.status == solve_status::infeasible
                                 ? "max_satisfaction_solve: model infeasible "
                                   "at the lowest degree"
                                 : "max_satisfaction_solve: goal unattainable "
                                   "at the lowest degree");
  }
  int iterations = 0;
  if (attains(hi)) {
    lo = hi;  // every degree in the bracket satisfies the goal
  } else {
    while (hi - lo > opts.tol && iterations < opts.max_iterations) {
      const double mid = 0.5 * (lo + hi);
      if (attains(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++iterations;
    }
  }

  // Re-solve at the answer so the returned witness matches lambda.
  if (!attains(lo)) {
    throw satisfaction_error(
        "max_satisfaction_solve: certificate re-check failed");
  }
  satisfaction_result result;
  result.lambda = lo;
  result.x = witness.x;
  result.achieved_objective = witness.objective;
  result.goal_lo = goal_lo;
  result.goal_hi = goal_hi;
  result.iterations = iterations;
  return result;
}

std::vector<comparison_entry> compare_methods(
    const fuzzy_linear_program& flp,
    const std::vector<std::pair<std::string, std::vector<double>>>& x_list,
    const std::vector<convention>& conventions, double tol) {
  validate(flp);
  for (const auto& [label, x] : x_list) {
    if (x.size() != flp.num_vars()) {
      throw std::invalid_argument("compare_methods: x '" + label +
                                  "' has wrong length");
    }
  }

  auto realize = [&](const convention& conv) -> linear_program {
    switch (conv.which) {
      case convention::kind::lower:
        return realize_endpoint(flp, endpoint::lower);
      case convention::kind::upper:
        return realize_endpoint(flp, endpoint::upper);
      case convention::kind::explicit_c: {
        if (conv.objective.size() != flp.num_vars()) {
          throw std::invalid_argument("compare_methods: convention '" +
                                      conv.label +
                                      "' objective has wrong length");
        }
        linear_program lp = realize_endpoint(flp, endpoint::lower);
        lp.objective = conv.objective;
        return lp;
      }
      case convention::kind::mid: {
        linear_program a = realize_endpoint(flp, endpoint::lower);
        const linear_program b = realize_endpoint(flp, endpoint::upper);
        for (std::size_t j = 0; j < a.objective.size(); ++j) {
          a.objective[j] = 0.5 * (a.objective[j] + b.objective[j]);
        }
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
          for (std::size_t j = 0; j < a.rows[i].coeffs.size(); ++j) {
            a.rows[i].coeffs[j] =
                0.5 * (a.rows[i].coeffs[j] + b.rows[i].coeffs[j]);
          }
        }
        return a;
      }
      case convention::kind::at_degree:
        return defuzzify_at(flp, conv.degree, conv.degree,
                            range_policy::clamp);
    }
    throw std::invalid_argument("compare_methods: unknown convention");
  };

  std::vector<comparison_entry> table;
  table.reserve(x_list.size() * conventions.size());
  for (const auto& [x_label, x] : x_list) {
    for (const convention& conv : conventions) {
      const linear_program lp = realize(conv);
      comparison_entry entry;
      entry.x_label = x_label;
      entry.convention_label = conv.label;
      entry.objective = evaluate_objective(lp.objective, x);
      entry.feasible = check_feasible(lp, x, tol).feasible;
      table.push_back(std::move(entry));
    }
  }
  return table;
}

}  // namespace fuzzylp
