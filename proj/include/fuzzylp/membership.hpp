#pragma once

#include <stdexcept>

namespace fuzzylp {

/// Modified S-curve (logistic) membership function over an interval
/// [v_a, v_b].  Inside the interval the degree is
///
///     B / (1 + C * exp(d * t)),   t = (v - v_a) / (v_b - v_a),
///
/// strictly decreasing from B/(1+C) at v_a down to B/(1+C*e^d) at v_b.
/// Below the interval the degree is 1, above it 0.  The canonical
/// parameters B=1, C=0.001, d=13.8 put the endpoint degrees near 0.999
/// and 0.001.
struct s_curve {
  double B = 1.0;
  double C = 0.001;
  double d = 13.8;
  double v_a = 0.0;
  double v_b = 1.0;
};

/// Open interval (lo, hi) of membership degrees.
struct degree_range {
  double lo = 0.0;
  double hi = 1.0;
};

/// Result of a clamped inverse: `clamped` is set when the requested
/// degree fell outside the invertible range and `value` is the nearer
/// interval endpoint.
struct clamped_value {
  double value = 0.0;
  bool clamped = false;
};

/// How out-of-range membership degrees are treated when inverting.
enum class range_policy { strict, clamp };

/// Throws std::invalid_argument unless B > 0, C > 0, d > 0 and
/// v_a < v_b, all finite.
void validate(const s_curve& s);

/// Membership degree of v.  Returns 1 strictly below the interval and 0
/// strictly above it; on [v_a, v_b] evaluates the logistic formula, so
/// membership(s, v_a) == B/(1+C) and membership(s, v_b) == B/(1+C*e^d).
double membership(const s_curve& s, double v);

/// Degrees that the curve actually attains on the open interval:
/// (B/(1+C*e^d), B/(1+C)).  Every m strictly inside is invertible.
degree_range valid_range(const s_curve& s);

/// Analytic inverse: the v in (v_a, v_b) whose membership equals m,
///
///     v = v_a + ((v_b - v_a) / d) * ln((B - m) / (C * m)).
///
/// Throws std::domain_error for m outside valid_range(s).
double inverse(const s_curve& s, double m);

/// Inverse that maps out-of-range degrees to the nearer interval
/// endpoint instead of failing: m >= hi yields v_a, m <= lo yields v_b.
clamped_value inverse_clamped(const s_curve& s, double m);

}  // namespace fuzzylp
