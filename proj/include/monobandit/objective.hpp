#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace monobandit {

using ScalarFn = std::function<double(double)>;

/// Raised when declared curvature constants are not backed by the gradient.
class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A one-dimensional, smooth, strongly convex objective on [p_min, p_max]
/// with its declared constants and known interior minimizer.
///
/// The analytic gradient is for verification only. Algorithms receive
/// function values through an Oracle and never see it.
class ObjectiveSpec {
 public:
  ObjectiveSpec(double p_min, double p_max, double x_star, double alpha,
                double beta, ScalarFn eval, ScalarFn grad, std::string label);

  double p_min() const { return p_min_; }
  double p_max() const { return p_max_; }
  double x_star() const { return x_star_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const std::string& label() const { return label_; }

  double eval(double x) const { return eval_(x); }
  double grad(double x) const { return grad_(x); }
  double f_star() const { return f_star_; }
  double inst_regret(double x) const { return eval_(x) - f_star_; }

  /// Same function, different declared constants. Used to exercise
  /// certification failures and conservative (looser) declarations.
  ObjectiveSpec with_constants(double alpha, double beta) const;

 private:
  double p_min_;
  double p_max_;
  double x_star_;
  double alpha_;
  double beta_;
  ScalarFn eval_;
  ScalarFn grad_;
  double f_star_;
  std::string label_;
};

/// f(x) = curvature * (x - center)^2, alpha = beta = 2 * curvature.
ObjectiveSpec make_quadratic(double center, double curvature, double p_min,
                             double p_max);

/// f(x) = a (x - c)^2 + b (x - c)^4. alpha = 2a, and beta is the largest
/// second derivative on the domain, 2a + 12 b r_max^2.
ObjectiveSpec make_quartic_blend(double center, double a, double b,
                                 double p_min, double p_max);

/// Parses `quad:center=1,curv=1,lo=0,hi=2` or
/// `quartic:center=1,a=5,b=0.1667,lo=0,hi=2`. Optional `alpha=`/`beta=`
/// keys override the declared constants.
ObjectiveSpec parse_objective(std::string_view text);

struct Certificate {
  double alpha_hat;
  double beta_hat;
};

/// Scans every ordered pair of a uniform grid and returns the extreme
/// gradient difference quotients. Throws CertificationFailure when the
/// declared alpha exceeds alpha_hat or beta_hat exceeds the declared beta.
Certificate certify(const ObjectiveSpec& spec, int grid_points);

}  // namespace monobandit
