#include "fuzzylp/membership.hpp"

#include <cmath>
#include <string>

namespace fuzzylp {

void validate(const s_curve& s) {
  if (!(s.B > 0.0) || !std::isfinite(s.B)) {
    throw std::invalid_argument("s_curve: B must be positive and finite");
  }
  if (!(s.C > 0.0) || !std::isfinite(s.C)) {
    throw std::invalid_argument("s_curve: C must be positive and finite");
  }
  if (!(s.d > 0.0) || !std::isfinite(s.d)) {
    throw std::invalid_argument("s_curve: d must be positive and finite");
  }
  if (!std::isfinite(s.v_a) || !std::isfinite(s.v_b) || !(s.v_a < s.v_b)) {
    throw std::invalid_argument(
        "s_curve: interval must satisfy v_a < v_b with finite bounds");
  }
}

double membership(const s_curve& s, double v) {
  validate(s);
  // The piecewise constants apply strictly outside the interval; on
  // [v_a, v_b] the logistic formula applies, so the endpoints take the
  // closed-form values B/(1+C) and B/(1+C*e^d).
  if (v < s.v_a) return 1.0;
  if (v > s.v_b) return 0.0;
  const double t = (v - s.v_a) / (s.v_b - s.v_a);
  return s.B / (1.0 + s.C * std::exp(s.d * t));
}

degree_range valid_range(const s_curve& s) {
  validate(s);
  return {s.B / (1.0 + s.C * std::exp(s.d)), s.B / (1.0 + s.C)};
}

double inverse(const s_curve& s, double m) {
  const degree_range r = valid_range(s);
  if (!std::isfinite(m) || m <= r.lo || m >= r.hi) {
    throw std::domain_error("s_curve inverse: degree " + std::to_string(m) +
                            " outside the invertible range (" +
                            std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                            ")");
  }
  const double t = std::log((s.B - m) / (s.C * m)) / s.d;
  return s.v_a + (s.v_b - s.v_a) * t;
}

clamped_value inverse_clamped(const s_curve& s, double m) {
  const degree_range r = valid_range(s);
  if (std::isnan(m)) {
    throw std::invalid_argument("s_curve inverse: degree is nan");
  }
  if (m >= r.hi) return {s.v_a, true};
  if (m <= r.lo) return {s.v_b, true};
  return {inverse(s, m), false};
}

}  // namespace fuzzylp
