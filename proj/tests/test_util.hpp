#pragma once

#include <random>
#include <stdexcept>
#include <string>

#include "fuzzylp/flp.hpp"
#include "fuzzylp/lp.hpp"
#include "fuzzylp/model_io.hpp"

namespace testutil {

inline std::string model_path(const std::string& name) {
  return std::string(FUZZYLP_MODEL_DIR) + "/" + name;
}

inline fuzzylp::fuzzy_linear_program load_model(const std::string& name) {
  const auto src = fuzzylp::load_model_file(model_path(name));
  if (!src) throw std::runtime_error("cannot read " + name);
  auto parsed = fuzzylp::parse_model(*src);
  if (!parsed.ok()) {
    throw std::runtime_error("parse failed:\n" +
                             fuzzylp::format_diagnostics(parsed, name));
  }
  return std::move(*parsed.model);
}

// The textile capacity/demand structure with a crisp objective.
inline fuzzylp::linear_program make_textile(std::vector<double> objective) {
  fuzzylp::linear_program lp;
  lp.direction = fuzzylp::sense::maximize;
  lp.objective = std::move(objective);
  lp.var_names = {"x1", "x2", "x3"};
  using fuzzylp::relation;
  lp.rows = {
      {{0.0033, 0.001, 0.0033}, relation::less_equal, 208.0, "cutting"},
      {{0.056, 0.025, 0.1}, relation::less_equal, 4368.0, "sewing"},
      {{0.0067, 0.004, 0.017}, relation::less_equal, 520.0, "pleating"},
      {{0.01, 0.01, 0.01}, relation::less_equal, 780.0, "packaging"},
      {{1.0, 0.0, 0.0}, relation::greater_equal, 25000.0, "demand_sheets"},
      {{0.0, 1.0, 0.0}, relation::greater_equal, 40000.0,
       "demand_pillowcases"},
      {{0.0, 0.0, 1.0}, relation::greater_equal, 10000.0, "demand_quilts"},
  };
  return lp;
}

// Random LP with a bounded feasible region: per-variable box rows plus
// extra random rows, coefficients in [-10, 10], rhs in [0, 100].
inline fuzzylp::linear_program random_bounded_lp(std::mt19937& gen) {
  std::uniform_real_distribution<double> coeff(-10.0, 10.0);
  std::uniform_real_distribution<double> rhs(0.0, 100.0);
  std::uniform_real_distribution<double> box(1.0, 100.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  fuzzylp::linear_program lp;
  const int nvars = std::uniform_int_distribution<int>(1, 4)(gen);
  lp.direction = u01(gen) < 0.75 ? fuzzylp::sense::maximize
                                 : fuzzylp::sense::minimize;
  for (int j = 0; j < nvars; ++j) lp.objective.push_back(coeff(gen));

  for (int j = 0; j < nvars; ++j) {
    std::vector<double> unit(static_cast<std::size_t>(nvars), 0.0);
    unit[static_cast<std::size_t>(j)] = 1.0;
    lp.rows.push_back({std::move(unit), fuzzylp::relation::less_equal,
                       box(gen), ""});
  }
  const int extra =
      std::uniform_int_distribution<int>(0, 6 - nvars)(gen);
  for (int i = 0; i < extra; ++i) {
    std::vector<double> coeffs(static_cast<std::size_t>(nvars));
    for (double& a : coeffs) a = coeff(gen);
    const double p = u01(gen);
    const fuzzylp::relation rel = p < 0.6 ? fuzzylp::relation::less_equal
                                  : p < 0.85
                                      ? fuzzylp::relation::greater_equal
                                      : fuzzylp::relation::equal;
    lp.rows.push_back({std::move(coeffs), rel, rhs(gen), ""});
  }
  return lp;
}

inline bool coeff_equal(const fuzzylp::coefficient& a,
                        const fuzzylp::coefficient& b) {
  if (fuzzylp::is_fuzzy(a) != fuzzylp::is_fuzzy(b)) return false;
  if (!fuzzylp::is_fuzzy(a)) {
    return std::get<double>(a) == std::get<double>(b);
  }
  const fuzzylp::s_curve& sa = std::get<fuzzylp::fuzzy_coeff>(a).curve;
  const fuzzylp::s_curve& sb = std::get<fuzzylp::fuzzy_coeff>(b).curve;
  return sa.B == sb.B && sa.C == sb.C && sa.d == sb.d && sa.v_a == sb.v_a &&
         sa.v_b == sb.v_b;
}

// Structural identity: bit-equal coefficients, same rows in order.
inline bool flp_equal(const fuzzylp::fuzzy_linear_program& a,
                      const fuzzylp::fuzzy_linear_program& b) {
  if (a.direction != b.direction) return false;
  if (a.objective.size() != b.objective.size()) return false;
  for (std::size_t j = 0; j < a.objective.size(); ++j) {
    if (!coeff_equal(a.objective[j], b.objective[j])) return false;
  }
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const fuzzylp::fuzzy_row& ra = a.rows[i];
    const fuzzylp::fuzzy_row& rb = b.rows[i];
    if (ra.rel != rb.rel || ra.rhs != rb.rhs || ra.label != rb.label) {
      return false;
    }
    if (ra.coeffs.size() != rb.coeffs.size()) return false;
    for (std::size_t j = 0; j < ra.coeffs.size(); ++j) {
      if (!coeff_equal(ra.coeffs[j], rb.coeffs[j])) return false;
    }
  }
  return true;
}

}  // namespace testutil
