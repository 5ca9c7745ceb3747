#pragma once

#include <Eigen/Core>
#include <vector>

#include "meshfree/ode_system.hpp"
#include "meshfree/shape_functions.hpp"

namespace meshfree {

/// Discretization snapshot: shape values C0 and shape derivatives C1 at the
/// collocation points (the nodes), plus the initial-condition row at t = 0.
struct CollocationSystem {
  NodeSet nodes;
  std::vector<double> colloc_points;
  Eigen::MatrixXd C0;      // N x N, row r = a_i(y_r)
  Eigen::MatrixXd C1;      // N x N, row r = a_i'(y_r)
  Eigen::VectorXd ic_row;  // a_i(t0)
  int ic_index = 0;        // collocation row replaced by the IC row

  Method method = Method::kMls;
  WeightSpec weight;
  int basis_degree = 2;
  MmlsSpec mmls;
};

/// Nodal solution plus an evaluator using the same discretization the solve
/// used. eval/eval_deriv reconstruct u^h and (u^h)' at arbitrary t.
class SolutionField {
 public:
  SolutionField() = default;
  SolutionField(CollocationSystem discretization, Eigen::MatrixXd nodal_values);

  const Eigen::MatrixXd& nodal_values() const { return nodal_values_; }
  const CollocationSystem& discretization() const { return disc_; }
  int n_funcs() const { return static_cast<int>(nodal_values_.cols()); }

  Eigen::VectorXd eval(double t) const;
  Eigen::VectorXd eval_deriv(double t) const;

 private:
  CollocationSystem disc_;
  Eigen::MatrixXd nodal_values_;  // N x n
};

struct NewtonConfig {
  double tolerance = 1e-12;  // on the max-norm of the stacked residual
  int max_iterations = 50;
};

struct SolveResult {
  SolutionField field;
  int newton_iterations = 0;
  std::vector<double> residual_history;
};

/// Builds C0/C1/ic_row for the given method. GMLS assembles the derivative
/// rows from the derivative functional; its value rows coincide with MLS.
CollocationSystem assemble(const OdeSystem& system, const NodeSet& nodes,
                           const WeightSpec& weight, const MonomialBasis& basis,
                           Method method, const MmlsSpec* mmls = nullptr);

/// Direct dense solve of the coupled (N*n) linear collocation system; the
/// row at the node nearest t = 0 is replaced by the IC row per unknown.
/// Requires system.nonlinear to be empty.
SolveResult solve_linear(const CollocationSystem& colloc,
                         const OdeSystem& system);

/// Newton iteration on the stacked residual
///   G(U) = C1 U - (C0 U) M^T - N(C0 U) - F,   IC rows substituted.
/// Full steps; the step is halved only if the trial residual is non-finite.
SolveResult solve_nonlinear(const CollocationSystem& colloc,
                            const OdeSystem& system,
                            const NewtonConfig& config = {});

/// Max over sample points of ||(u^h)'(t) - M u^h(t) - N(u^h(t)) - f(t)||_inf.
double residual_norm(const CollocationSystem& colloc, const OdeSystem& system,
                     const SolutionField& field,
                     const std::vector<double>& sample_points);

}  // namespace meshfree
