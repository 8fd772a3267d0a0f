#pragma once

// Concave non-decreasing valuation families on [0,1] with exact evaluation,
// one-sided derivatives and analytic inverses used by the welfare solvers.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace propalloc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Linear {
  double slope = 0.0;
};

struct Power {
  double coef = 0.0;
  double exponent = 1.0;  // restricted to (0,1]; exponent 1 degenerates to Linear
};

struct PwlKnot {
  double x = 0.0;
  double value = 0.0;
};

struct PiecewiseLinearConcave {
  std::vector<PwlKnot> knots;  // ordered by x, expected to span [0,1] starting at (0,0)
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

class ValuationFunction {
 public:
  using Spec = std::variant<Linear, Power, PiecewiseLinearConcave>;

  ValuationFunction() : spec_(Linear{0.0}) {}
  explicit ValuationFunction(Linear f) : spec_(f) {}
  explicit ValuationFunction(Power f) : spec_(f) {}
  explicit ValuationFunction(PiecewiseLinearConcave f) : spec_(std::move(f)) {}

  static ValuationFunction linear(double slope) { return ValuationFunction(Linear{slope}); }
  static ValuationFunction power(double coef, double exponent) {
    return ValuationFunction(Power{coef, exponent});
  }
  static ValuationFunction piecewise_linear(std::vector<PwlKnot> knots) {
    return ValuationFunction(PiecewiseLinearConcave{std::move(knots)});
  }

  const Spec& spec() const { return spec_; }

  /// Value of the function at a share x in [0,1].
  double eval(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::domain_error("valuation eval: share outside [0,1]");
    }
    return std::visit([x](const auto& f) { return eval_impl(f, x); }, spec_);
  }

  /// Right-hand derivative at x in [0,1). May be +infinity (Power at 0).
  double right_derivative(double x) const {
    if (!(x >= 0.0 && x < 1.0)) {
      throw std::domain_error("valuation right_derivative: share outside [0,1)");
    }
    return std::visit([x](const auto& f) { return deriv_impl(f, x); }, spec_);
  }

  /// sup{ x in [0,1] : right_derivative(x) >= lambda }. Used by water-filling.
  double max_share_with_derivative_at_least(double lambda) const {
    if (lambda <= 0.0) return 1.0;
    return std::visit([lambda](const auto& f) { return inv_deriv_impl(f, lambda); }, spec_);
  }

  /// inf{ x in [0,1] : eval(x) >= target }; +infinity when eval(1) < target.
  double share_reaching_value(double target) const {
    if (target <= 0.0) return 0.0;
    return std::visit([target](const auto& f) { return inv_value_impl(f, target); }, spec_);
  }

  ValidationReport validate() const {
    ValidationReport report;
    std::visit([&report](const auto& f) { validate_impl(f, report); }, spec_);
    return report;
  }

 private:
  static double eval_impl(const Linear& f, double x) { return f.slope * x; }

  static double eval_impl(const Power& f, double x) {
    if (f.exponent == 1.0) return f.coef * x;
    if (x == 0.0) return 0.0;
    return f.coef * std::pow(x, f.exponent);
  }

  static double eval_impl(const PiecewiseLinearConcave& f, double x) {
    const auto& k = f.knots;
    if (k.empty()) return 0.0;
    if (k.size() == 1) return k.front().value;
    std::size_t seg = segment_index(k, x);
    const PwlKnot& a = k[seg];
    const PwlKnot& b = k[seg + 1];
    double slope = segment_slope(a, b);
    return a.value + slope * (x - a.x);
  }

  static double deriv_impl(const Linear& f, double) { return f.slope; }

  static double deriv_impl(const Power& f, double x) {
    if (f.exponent == 1.0) return f.coef;
    if (x == 0.0) return f.coef == 0.0 ? 0.0 : kInfinity;
    return f.coef * f.exponent * std::pow(x, f.exponent - 1.0);
  }

  static double deriv_impl(const PiecewiseLinearConcave& f, double x) {
    const auto& k = f.knots;
    if (k.size() < 2) return 0.0;
    std::size_t seg = segment_index(k, x);
    return segment_slope(k[seg], k[seg + 1]);
  }

  static double inv_deriv_impl(const Linear& f, double lambda) {
    return f.slope >= lambda ? 1.0 : 0.0;
  }

  static double inv_deriv_impl(const Power& f, double lambda) {
    if (f.exponent == 1.0 || f.coef == 0.0) {
      return f.coef * f.exponent >= lambda ? 1.0 : 0.0;
    }
    // v'(x) = coef*exp*x^(exp-1) decreasing; solve v'(x) = lambda.
    double ratio = f.coef * f.exponent / lambda;
    double x = std::pow(ratio, 1.0 / (1.0 - f.exponent));
    return std::min(1.0, x);
  }

  static double inv_deriv_impl(const PiecewiseLinearConcave& f, double lambda) {
    const auto& k = f.knots;
    if (k.size() < 2) return 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (segment_slope(k[i], k[i + 1]) >= lambda) {
        best = std::min(1.0, k[i + 1].x);
      } else {
        break;  // slopes non-increasing for valid instances
      }
    }
    return best;
  }

  static double inv_value_impl(const Linear& f, double target) {
    if (f.slope <= 0.0) return kInfinity;
    double x = target / f.slope;
    return x <= 1.0 ? x : kInfinity;
  }

  static double inv_value_impl(const Power& f, double target) {
    if (f.coef <= 0.0) return kInfinity;
    double x = f.exponent == 1.0 ? target / f.coef
                                 : std::pow(target / f.coef, 1.0 / f.exponent);
    return x <= 1.0 ? x : kInfinity;
  }

  static double inv_value_impl(const PiecewiseLinearConcave& f, double target) {
    const auto& k = f.knots;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (k[i + 1].value >= target) {
        double slope = segment_slope(k[i], k[i + 1]);
        if (slope <= 0.0) return k[i + 1].x;
        return k[i].x + (target - k[i].value) / slope;
      }
    }
    return kInfinity;
  }

  static void validate_impl(const Linear& f, ValidationReport& r) {
    if (!(f.slope >= 0.0) || !std::isfinite(f.slope)) {
      r.fail("linear: slope must be a nonnegative finite real");
    }
  }

  static void validate_impl(const Power& f, ValidationReport& r) {
    if (!(f.coef >= 0.0) || !std::isfinite(f.coef)) {
      r.fail("power: coefficient must be a nonnegative finite real");
    }
    if (!(f.exponent > 0.0 && f.exponent <= 1.0)) {
      r.fail("power: exponent must lie in (0,1]");
    }
  }

  static void validate_impl(const PiecewiseLinearConcave& f, ValidationReport& r) {
    const auto& k = f.knots;
    if (k.size() < 2) {
      r.fail("pwl: needs at least two knots");
      return;
    }
    if (k.front().x != 0.0 || k.front().value != 0.0) {
      r.fail("pwl: first knot must be (0,0)");
    }
    if (k.back().x != 1.0) {
      r.fail("pwl: last knot must have x = 1");
    }
    double prev_slope = kInfinity;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (!(k[i + 1].x > k[i].x)) {
        r.fail("pwl: knot x-coordinates must be strictly increasing");
        return;
      }
      if (k[i].value < 0.0 || k[i + 1].value < 0.0) {
        r.fail("pwl: knot values must be nonnegative");
      }
      double slope = segment_slope(k[i], k[i + 1]);
      if (slope < 0.0) {
        r.fail("pwl: values must be non-decreasing (segment " + std::to_string(i) + ")");
      }
      if (slope > prev_slope + 1e-12) {
        r.fail("pwl: convex kink at knot " + std::to_string(i) + " (slopes must be non-increasing)");
      }
      prev_slope = slope;
    }
  }

  static double segment_slope(const PwlKnot& a, const PwlKnot& b) {
    return (b.value - a.value) / (b.x - a.x);
  }

  // Largest i with knots[i].x <= x, clamped so that i+1 is a valid knot.
  static std::size_t segment_index(const std::vector<PwlKnot>& k, double x) {
    std::size_t lo = 0;
    std::size_t hi = k.size() - 1;
    while (lo + 1 < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (k[mid].x <= x) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  Spec spec_;
};

}  // namespace propalloc
