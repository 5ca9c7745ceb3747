#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>

namespace meshfree {

/// First-order system u'(t) = M u(t) + N(u(t)) + f(t), u(0) = initial,
/// on t_span. Empty callables stand for identically-zero terms.
struct OdeSystem {
  int n_funcs = 0;
  Eigen::MatrixXd linear_matrix;                                       // n x n
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> nonlinear;    // N(u)
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> nonlinear_jacobian;
  std::function<Eigen::VectorXd(double)> forcing;                      // f(t)
  Eigen::VectorXd initial;
  std::array<double, 2> t_span{0.0, 1.0};

  bool is_linear() const { return !nonlinear; }

  Eigen::VectorXd nonlinear_term(const Eigen::VectorXd& u) const {
    return nonlinear ? nonlinear(u) : Eigen::VectorXd::Zero(n_funcs);
  }

  Eigen::MatrixXd nonlinear_jacobian_at(const Eigen::VectorXd& u) const {
    return nonlinear_jacobian ? nonlinear_jacobian(u)
                              : Eigen::MatrixXd::Zero(n_funcs, n_funcs);
  }

  Eigen::VectorXd forcing_at(double t) const {
    return forcing ? forcing(t) : Eigen::VectorXd::Zero(n_funcs);
  }

  Eigen::VectorXd rhs(double t, const Eigen::VectorXd& u) const {
    return linear_matrix * u + nonlinear_term(u) + forcing_at(t);
  }
};

/// Max relative mismatch between the supplied nonlinear Jacobian and central
/// finite differences of the nonlinear term, over the given states.
double jacobian_fd_error(const OdeSystem& system,
                         const std::vector<Eigen::VectorXd>& states,
                         double step = 1e-6);

}  // namespace meshfree
