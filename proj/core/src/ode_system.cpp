#include "meshfree/ode_system.hpp"

#include <cmath>
#include <vector>

namespace meshfree {

double jacobian_fd_error(const OdeSystem& system,
                         const std::vector<Eigen::VectorXd>& states,
                         double step) {
  double worst = 0.0;
  for (const Eigen::VectorXd& u : states) {
    const Eigen::MatrixXd J = system.nonlinear_jacobian_at(u);
    const double scale = std::max(J.cwiseAbs().maxCoeff(), 1.0);
    for (int k = 0; k < system.n_funcs; ++k) {
      Eigen::VectorXd up = u, um = u;
      up[k] += step;
      um[k] -= step;
      const Eigen::VectorXd col =
          (system.nonlinear_term(up) - system.nonlinear_term(um)) /
          (2.0 * step);
      worst = std::max(worst, (col - J.col(k)).cwiseAbs().maxCoeff() / scale);
    }
  }
  return worst;
}

}  // namespace meshfree
