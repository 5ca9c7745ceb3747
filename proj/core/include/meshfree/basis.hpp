#pragma once

#include <Eigen/Core>

#include "meshfree/errors.hpp"

namespace meshfree {

/// Monomial basis p(x) = [1, x, ..., x^m] and its derivative rows.
class MonomialBasis {
 public:
  explicit MonomialBasis(int degree) : degree_(degree) {
    if (degree < 0) {
      throw Error(ErrorCode::kInvalidConfig, "basis degree must be >= 0");
    }
  }

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }

  Eigen::VectorXd eval(double x) const {
    Eigen::VectorXd p(size());
    double v = 1.0;
    for (int j = 0; j <= degree_; ++j) {
      p[j] = v;
      v *= x;
    }
    return p;
  }

  /// Row of k-th derivatives: entry j is d^k/dx^k x^j, which vanishes for
  /// k > j.
  Eigen::VectorXd deriv(double x, int order) const {
    if (order == 0) return eval(x);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(size());
    double v = 1.0;
    for (int j = order; j <= degree_; ++j) {
      double coeff = 1.0;
      for (int i = 0; i < order; ++i) coeff *= static_cast<double>(j - i);
      p[j] = coeff * v;
      v *= x;
    }
    return p;
  }

 private:
  int degree_;
};

}  // namespace meshfree
