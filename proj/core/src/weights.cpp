#include "meshfree/weights.hpp"

#include <cmath>

namespace meshfree {

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::kGauss: return "gauss";
    case KernelKind::kRbf: return "rbf";
    case KernelKind::kSpline: return "spline";
    case KernelKind::kUnit: return "unit";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kernel(const std::string& name) {
  if (name == "gauss") return KernelKind::kGauss;
  if (name == "rbf") return KernelKind::kRbf;
  if (name == "spline") return KernelKind::kSpline;
  if (name == "unit") return KernelKind::kUnit;
  return std::nullopt;
}

WeightSpec WeightSpec::gauss(double delta, double c) {
  WeightSpec spec{KernelKind::kGauss, delta, c};
  spec.validate();
  return spec;
}

WeightSpec WeightSpec::rbf(double delta) {
  WeightSpec spec{KernelKind::kRbf, delta, 0.0};
  spec.validate();
  return spec;
}

WeightSpec WeightSpec::spline(double delta) {
  WeightSpec spec{KernelKind::kSpline, delta, 0.0};
  spec.validate();
  return spec;
}

WeightSpec WeightSpec::unit(double delta) {
  WeightSpec spec{KernelKind::kUnit, delta, 0.0};
  spec.validate();
  return spec;
}

void WeightSpec::validate() const {
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "weight support radius must be > 0");
  }
  if (kind == KernelKind::kGauss && !(c > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "gauss weight needs a positive shape parameter c");
  }
}

WeightEvaluator::WeightEvaluator(const WeightSpec& spec)
    : kind_(spec.kind), delta_(spec.delta), inv_delta_(1.0 / spec.delta) {
  spec.validate();
  if (kind_ == KernelKind::kGauss) {
    inv_c2_ = 1.0 / (spec.c * spec.c);
    edge_ = std::exp(-spec.delta * spec.delta * inv_c2_);
    inv_1me_ = 1.0 / (1.0 - edge_);
  }
}

double WeightEvaluator::value(double r) const {
  if (r >= delta_) return 0.0;
  switch (kind_) {
    case KernelKind::kGauss:
      return (std::exp(-r * r * inv_c2_) - edge_) * inv_1me_;
    case KernelKind::kRbf: {
      const double s = r * inv_delta_;
      const double q = 6.0 + s * (36.0 + s * (82.0 + s * (72.0 + s * (30.0 + 5.0 * s))));
      const double e = 1.0 - s;
      const double e2 = e * e;
      return e2 * e2 * e2 * q;
    }
    case KernelKind::kSpline: {
      const double s = r * inv_delta_;
      return 1.0 + s * s * (-6.0 + s * (8.0 - 3.0 * s));
    }
    case KernelKind::kUnit:
      return 1.0;
  }
  return 0.0;
}

double WeightEvaluator::slope(double x, double xj) const {
  const double r = std::abs(x - xj);
  if (r >= delta_ || r == 0.0) return 0.0;
  double dwdr = 0.0;
  switch (kind_) {
    case KernelKind::kGauss:
      dwdr = -2.0 * r * inv_c2_ * std::exp(-r * r * inv_c2_) * inv_1me_;
      break;
    case KernelKind::kRbf: {
      const double s = r * inv_delta_;
      const double q = 6.0 + s * (36.0 + s * (82.0 + s * (72.0 + s * (30.0 + 5.0 * s))));
      const double dq = 36.0 + s * (164.0 + s * (216.0 + s * (120.0 + 25.0 * s)));
      const double e = 1.0 - s;
      const double e2 = e * e;
      const double e4 = e2 * e2;
      dwdr = (-6.0 * e4 * e * q + e4 * e2 * dq) * inv_delta_;
      break;
    }
    case KernelKind::kSpline: {
      const double s = r * inv_delta_;
      dwdr = s * (-12.0 + s * (24.0 - 12.0 * s)) * inv_delta_;
      break;
    }
    case KernelKind::kUnit:
      return 0.0;
  }
  return (x > xj) ? dwdr : -dwdr;
}

double eval(const WeightSpec& spec, double r) {
  return WeightEvaluator(spec).value(r);
}

double eval_deriv(const WeightSpec& spec, double x, double xj) {
  return WeightEvaluator(spec).slope(x, xj);
}

}  // namespace meshfree
