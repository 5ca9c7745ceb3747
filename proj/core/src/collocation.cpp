#include "meshfree/collocation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

namespace meshfree {

namespace {

Eigen::VectorXd dense_row(const ShapeFunctionRow& row, int n,
                          bool use_derivs) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd& src = use_derivs ? row.derivs : row.values;
  for (int j = 0; j < row.cardinality(); ++j) {
    out[row.indices[j]] = src[j];
  }
  return out;
}

ShapeFunctionRow field_row(const CollocationSystem& disc, double t,
                           int deriv_order) {
  const MonomialBasis basis(disc.basis_degree);
  switch (disc.method) {
    case Method::kMmls:
      return mmls_shape(disc.nodes, disc.weight, basis, disc.mmls, t,
                        deriv_order);
    case Method::kGmls:
      if (deriv_order == 1) {
        return gmls_coefficients(disc.nodes, disc.weight, basis,
                                 FunctionalSpec::derivative(t, 1));
      }
      return mls_shape(disc.nodes, disc.weight, basis, t, 0);
    case Method::kMls:
    default:
      return mls_shape(disc.nodes, disc.weight, basis, t, deriv_order);
  }
}

/// Stacked residual, function-major: G[(j, r)] with the IC rows substituted.
/// Also reports the values V = C0 U needed by the Jacobian.
Eigen::MatrixXd residual_matrix(const CollocationSystem& colloc,
                                const OdeSystem& system,
                                const Eigen::MatrixXd& U, Eigen::MatrixXd& V) {
  const int N = colloc.nodes.size();
  const int n = system.n_funcs;
  V.noalias() = colloc.C0 * U;
  Eigen::MatrixXd G = colloc.C1 * U;
  G.noalias() -= V * system.linear_matrix.transpose();
  for (int r = 0; r < N; ++r) {
    Eigen::VectorXd extra = system.nonlinear_term(V.row(r).transpose()) +
                            system.forcing_at(colloc.colloc_points[r]);
    G.row(r) -= extra.transpose();
  }
  for (int j = 0; j < n; ++j) {
    G(colloc.ic_index, j) =
        colloc.ic_row.dot(U.col(j)) - system.initial[j];
  }
  return G;
}

Eigen::MatrixXd newton_matrix(const CollocationSystem& colloc,
                              const OdeSystem& system,
                              const Eigen::MatrixXd& V) {
  const int N = colloc.nodes.size();
  const int n = system.n_funcs;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N * n, N * n);
  for (int r = 0; r < N; ++r) {
    Eigen::MatrixXd coupling = system.linear_matrix;
    if (!system.is_linear()) {
      coupling += system.nonlinear_jacobian_at(V.row(r).transpose());
    }
    for (int j = 0; j < n; ++j) {
      if (r == colloc.ic_index) continue;
      J.block(j * N + r, j * N, 1, N) = colloc.C1.row(r);
      for (int k = 0; k < n; ++k) {
        J.block(j * N + r, k * N, 1, N) -= coupling(j, k) * colloc.C0.row(r);
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    J.block(j * N + colloc.ic_index, j * N, 1, N) = colloc.ic_row.transpose();
  }
  return J;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& G) {
  const int N = static_cast<int>(G.rows());
  const int n = static_cast<int>(G.cols());
  Eigen::VectorXd g(N * n);
  for (int j = 0; j < n; ++j) g.segment(j * N, N) = G.col(j);
  return g;
}

void check_square_solve(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                        ErrorCode code, const char* what) {
  const Eigen::VectorXd d = lu.matrixLU().diagonal().cwiseAbs();
  if (d.minCoeff() == 0.0 || !d.allFinite()) {
    throw Error(code, what);
  }
}

}  // namespace

SolutionField::SolutionField(CollocationSystem discretization,
                             Eigen::MatrixXd nodal_values)
    : disc_(std::move(discretization)), nodal_values_(std::move(nodal_values)) {}

Eigen::VectorXd SolutionField::eval(double t) const {
  ShapeFunctionRow row = field_row(disc_, t, 0);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nodal_values_.cols());
  for (int j = 0; j < row.cardinality(); ++j) {
    out += row.values[j] * nodal_values_.row(row.indices[j]).transpose();
  }
  return out;
}

Eigen::VectorXd SolutionField::eval_deriv(double t) const {
  ShapeFunctionRow row = field_row(disc_, t, 1);
  const Eigen::VectorXd& coeffs =
      disc_.method == Method::kGmls ? row.values : row.derivs;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nodal_values_.cols());
  for (int j = 0; j < row.cardinality(); ++j) {
    out += coeffs[j] * nodal_values_.row(row.indices[j]).transpose();
  }
  return out;
}

CollocationSystem assemble(const OdeSystem& system, const NodeSet& nodes,
                           const WeightSpec& weight, const MonomialBasis& basis,
                           Method method, const MmlsSpec* mmls) {
  if (system.n_funcs < 1 || system.initial.size() != system.n_funcs) {
    throw Error(ErrorCode::kInvalidConfig,
                "ODE system needs n_funcs >= 1 matching the initial vector");
  }
  CollocationSystem colloc;
  colloc.nodes = nodes;
  colloc.colloc_points = nodes.points;
  colloc.method = method;
  colloc.weight = weight;
  colloc.basis_degree = basis.degree();
  if (method == Method::kMmls) {
    if (mmls == nullptr) {
      throw Error(ErrorCode::kInvalidConfig, "MMLS method needs an MmlsSpec");
    }
    colloc.mmls = *mmls;
  }

  const int N = nodes.size();
  colloc.C0 = Eigen::MatrixXd::Zero(N, N);
  colloc.C1 = Eigen::MatrixXd::Zero(N, N);

  std::vector<ShapeFunctionRow> rows =
      shape_matrix(nodes, weight, basis, colloc.colloc_points, method, 1,
                   method == Method::kMmls ? &colloc.mmls : nullptr);
  for (int r = 0; r < N; ++r) {
    const ShapeFunctionRow& row = rows[r];
    for (int j = 0; j < row.cardinality(); ++j) {
      colloc.C0(r, row.indices[j]) = row.values[j];
      colloc.C1(r, row.indices[j]) = row.derivs[j];
    }
  }

  // IC row: shape values at the initial time; replaces the collocation row
  // at the node nearest t0.
  const double t0 = system.t_span[0];
  ShapeFunctionRow ic =
      method == Method::kMmls
          ? mmls_shape(nodes, weight, basis, colloc.mmls, t0, 0)
          : mls_shape(nodes, weight, basis, t0, 0);
  colloc.ic_row = dense_row(ic, N, false);
  int nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < N; ++r) {
    const double d = std::abs(colloc.colloc_points[r] - t0);
    if (d < best) {
      best = d;
      nearest = r;
    }
  }
  colloc.ic_index = nearest;
  return colloc;
}

SolveResult solve_linear(const CollocationSystem& colloc,
                         const OdeSystem& system) {
  if (!system.is_linear()) {
    throw Error(ErrorCode::kInvalidConfig,
                "solve_linear requires a system without a nonlinear term");
  }
  const int N = colloc.nodes.size();
  const int n = system.n_funcs;
  Eigen::MatrixXd J = newton_matrix(colloc, system, Eigen::MatrixXd::Zero(N, n));
  Eigen::VectorXd rhs(N * n);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < N; ++r) {
      rhs[j * N + r] = r == colloc.ic_index
                           ? system.initial[j]
                           : system.forcing_at(colloc.colloc_points[r])[j];
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
  check_square_solve(lu, ErrorCode::kSingularCollocationMatrix,
                     "collocation matrix is singular");
  Eigen::VectorXd u = lu.solve(rhs);
  if (!u.allFinite()) {
    throw Error(ErrorCode::kSingularCollocationMatrix,
                "collocation solve produced non-finite values");
  }
  Eigen::MatrixXd U(N, n);
  for (int j = 0; j < n; ++j) U.col(j) = u.segment(j * N, N);
  SolveResult result;
  result.field = SolutionField(colloc, std::move(U));
  return result;
}

SolveResult solve_nonlinear(const CollocationSystem& colloc,
                            const OdeSystem& system,
                            const NewtonConfig& config) {
  const int N = colloc.nodes.size();
  const int n = system.n_funcs;

  Eigen::MatrixXd U(N, n);
  for (int r = 0; r < N; ++r) U.row(r) = system.initial.transpose();

  SolveResult result;
  Eigen::MatrixXd V(N, n);
  for (int it = 0; it <= config.max_iterations; ++it) {
    Eigen::MatrixXd G = residual_matrix(colloc, system, U, V);
    const double gnorm = G.cwiseAbs().maxCoeff();
    result.residual_history.push_back(gnorm);
    if (gnorm <= config.tolerance) {
      result.newton_iterations = it;
      result.field = SolutionField(colloc, std::move(U));
      return result;
    }
    if (it == config.max_iterations) break;

    Eigen::MatrixXd J = newton_matrix(colloc, system, V);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    check_square_solve(lu, ErrorCode::kSingularJacobian,
                       "Newton Jacobian is singular");
    Eigen::VectorXd step = lu.solve(-flatten(G));
    if (!step.allFinite()) {
      throw Error(ErrorCode::kSingularJacobian,
                  "Newton step is non-finite");
    }
    Eigen::MatrixXd dU(N, n);
    for (int j = 0; j < n; ++j) dU.col(j) = step.segment(j * N, N);

    // Full Newton step; halve only when the trial residual overflows.
    double scale = 1.0;
    for (int halving = 0; halving < 40; ++halving) {
      Eigen::MatrixXd trial = U + scale * dU;
      Eigen::MatrixXd Gt = residual_matrix(colloc, system, trial, V);
      if (Gt.allFinite()) {
        U = std::move(trial);
        break;
      }
      scale *= 0.5;
      if (halving == 39) {
        throw Error(ErrorCode::kNewtonDiverged,
                    "Newton residual is non-finite at all step sizes");
      }
    }
  }
  std::ostringstream os;
  os << "Newton did not reach tolerance " << config.tolerance << " in "
     << config.max_iterations
     << " iterations (last residual " << result.residual_history.back() << ")";
  throw Error(ErrorCode::kNewtonDiverged, os.str());
}

double residual_norm(const CollocationSystem& colloc, const OdeSystem& system,
                     const SolutionField& field,
                     const std::vector<double>& sample_points) {
  double worst = 0.0;
  for (double t : sample_points) {
    const Eigen::VectorXd u = field.eval(t);
    const Eigen::VectorXd du = field.eval_deriv(t);
    const Eigen::VectorXd r = du - system.linear_matrix * u -
                              system.nonlinear_term(u) - system.forcing_at(t);
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace meshfree
