#pragma once

#include <optional>
#include <string>

#include "meshfree/errors.hpp"

namespace meshfree {

/// Compactly supported weight kernels. kUnit is a top-hat test hook (constant
/// 1 inside the support) and is not exposed on the CLI.
enum class KernelKind { kGauss, kRbf, kSpline, kUnit };

std::string to_string(KernelKind kind);
std::optional<KernelKind> parse_kernel(const std::string& name);

/// Kernel selection plus support radius delta; c is the Gauss shape
/// parameter (ignored by the other kinds).
struct WeightSpec {
  KernelKind kind = KernelKind::kSpline;
  double delta = 0.0;
  double c = 0.0;

  static WeightSpec gauss(double delta, double c);
  static WeightSpec rbf(double delta);
  static WeightSpec spline(double delta);
  static WeightSpec unit(double delta);

  /// Throws kInvalidConfig on a non-positive delta, or non-positive c for
  /// the Gauss kernel.
  void validate() const;
};

/// Default Gauss shape parameter for a given support radius. The experiments
/// never state c; delta/6 keeps the GMLS solve of the stiff benchmark inside
/// its error budget (delta/4 does not).
inline double default_gauss_c(double delta) { return delta / 6.0; }

/// w(r); exactly 0 for r >= delta.
double eval(const WeightSpec& spec, double r);

/// d/dx of w(|x - xj|); 0 at r = 0 and for r >= delta.
double eval_deriv(const WeightSpec& spec, double x, double xj);

/// Per-spec constants hoisted out of the evaluation loops (the Gauss kernel
/// otherwise pays two exp() per call). eval()/eval_deriv() are thin wrappers
/// over this, so both routes compute identical values.
class WeightEvaluator {
 public:
  explicit WeightEvaluator(const WeightSpec& spec);

  double value(double r) const;
  double slope(double x, double xj) const;  // d/dx of w(|x - xj|)
  double delta() const { return delta_; }

 private:
  KernelKind kind_;
  double delta_;
  double inv_delta_;
  double inv_c2_ = 0.0;    // Gauss
  double edge_ = 0.0;      // Gauss: exp(-(delta/c)^2)
  double inv_1me_ = 0.0;   // Gauss: 1/(1 - edge)
};

}  // namespace meshfree
