#include "meshfree/shape_functions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "meshfree/detail/small_lu.hpp"

namespace meshfree {

namespace {

constexpr int kStackStar = 64;

double pivot_ratio(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
  Eigen::VectorXd d = lu.matrixLU().diagonal().cwiseAbs();
  const double dmin = d.minCoeff();
  if (dmin == 0.0) return std::numeric_limits<double>::infinity();
  return d.maxCoeff() / dmin;
}

[[noreturn]] void throw_singular(ErrorCode code, double x, int cardinality,
                                 double cond) {
  std::ostringstream os;
  os << (code == ErrorCode::kSingularRegularizedMatrix
             ? "regularized moment matrix singular"
             : "moment matrix singular")
     << " at x = " << x << " (star cardinality " << cardinality
     << ", condition estimate " << cond << ")";
  throw Error(code, os.str());
}

struct MomentWork {
  int lo = 0;
  int k = 0;
  Eigen::MatrixXd P;  // (m+1) x k, column j = p(x_j)
  Eigen::MatrixXd B;  // (m+1) x k, column j = w_j p(x_j)
  Eigen::MatrixXd A;  // (m+1) x (m+1)
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  double cond = 0.0;
};

void build_moment(const NodeSet& nodes, const WeightEvaluator& we,
                  const MonomialBasis& basis, double x, MomentWork& work) {
  auto [lo, hi] = star_range(nodes, x, we.delta());
  work.lo = lo;
  work.k = hi - lo;
  if (work.k == 0) {
    std::ostringstream os;
    os << "empty star at x = " << x << " with radius " << we.delta();
    throw Error(ErrorCode::kEmptyStar, os.str());
  }
  const int n = basis.size();
  work.P.resize(n, work.k);
  work.B.resize(n, work.k);
  for (int j = 0; j < work.k; ++j) {
    const double xj = nodes.points[lo + j];
    work.P.col(j) = basis.eval(xj);
    work.B.col(j) = we.value(std::abs(x - xj)) * work.P.col(j);
  }
  work.A.noalias() = work.B * work.P.transpose();
}

void factor_moment(MomentWork& work) {
  work.lu.compute(work.A);
  work.cond = pivot_ratio(work.lu);
}

void fill_indices(ShapeFunctionRow& row, int lo, int k) {
  row.indices.resize(k);
  for (int j = 0; j < k; ++j) row.indices[j] = lo + j;
}

/// Shared implementation for MLS and MMLS: MMLS adds H to the moment matrix
/// before factoring; everything else (including A', which H does not affect)
/// is identical.
void weighted_ls_shape_into(const NodeSet& nodes, const WeightEvaluator& we,
                            const MonomialBasis& basis, const MmlsSpec* mmls,
                            double x, int deriv_order, MomentWork& work,
                            ShapeFunctionRow& row) {
  if (deriv_order < 0 || deriv_order > 1) {
    throw Error(ErrorCode::kInvalidConfig, "deriv_order must be 0 or 1");
  }
  build_moment(nodes, we, basis, x, work);
  const int n = basis.size();
  if (mmls == nullptr) {
    if (work.k < n) {
      throw_singular(ErrorCode::kSingularMomentMatrix, x, work.k,
                     std::numeric_limits<double>::infinity());
    }
  } else {
    for (int d = 2; d <= basis.degree(); ++d) {
      work.A(d, d) += mmls->reg_weights[d - 2];
    }
  }
  factor_moment(work);
  if (!(work.cond < kConditionLimit)) {
    throw_singular(mmls ? ErrorCode::kSingularRegularizedMatrix
                        : ErrorCode::kSingularMomentMatrix,
                   x, work.k, work.cond);
  }

  const Eigen::VectorXd p = basis.eval(x);
  const Eigen::MatrixXd X = work.lu.solve(work.B);  // A^{-1} B
  row.eval_point = x;
  fill_indices(row, work.lo, work.k);
  row.values.noalias() = X.transpose() * p;

  if (deriv_order == 1) {
    Eigen::MatrixXd Bp(n, work.k);  // column j: w_j'(x) p(x_j)
    for (int j = 0; j < work.k; ++j) {
      Bp.col(j) = we.slope(x, nodes.points[work.lo + j]) * work.P.col(j);
    }
    const Eigen::MatrixXd Ap = Bp * work.P.transpose();
    const Eigen::MatrixXd Y = work.lu.solve(Ap * X);
    const Eigen::MatrixXd Z = work.lu.solve(Bp);
    const Eigen::VectorXd dp = basis.deriv(x, 1);
    row.derivs.noalias() = X.transpose() * dp;
    row.derivs.noalias() -= Y.transpose() * p;
    row.derivs.noalias() += Z.transpose() * p;
  } else {
    row.derivs.resize(0);
  }
}

/// Allocation-free GMLS row: the moment matrix lives in a stack LU and the
/// coefficient row is a single back-substitution plus one pass of dots.
void gmls_into(const NodeSet& nodes, const WeightEvaluator& we,
               const MonomialBasis& basis, const FunctionalSpec& functional,
               ShapeFunctionRow& row) {
  const int order =
      functional.kind == FunctionalSpec::Kind::kPointEvaluation
          ? 0
          : functional.order;
  if (order < 0 || order > basis.degree()) {
    std::ostringstream os;
    os << "functional order " << order << " exceeds basis degree "
       << basis.degree();
    throw Error(ErrorCode::kUnsupportedFunctionalOrder, os.str());
  }
  const double x = functional.location;
  auto [lo, hi] = star_range(nodes, x, we.delta());
  const int k = hi - lo;
  if (k == 0) {
    std::ostringstream os;
    os << "empty star at x = " << x << " with radius " << we.delta();
    throw Error(ErrorCode::kEmptyStar, os.str());
  }
  const int n = basis.size();
  if (k < n) {
    throw_singular(ErrorCode::kSingularMomentMatrix, x, k,
                   std::numeric_limits<double>::infinity());
  }

  double wstack[kStackStar];
  double pstack[kStackStar * detail::SmallLU::kMaxN];
  std::vector<double> wheap, pheap;
  double* wbuf = wstack;
  double* pbuf = pstack;
  if (k > kStackStar) {
    wheap.resize(k);
    pheap.resize(static_cast<std::size_t>(k) * n);
    wbuf = wheap.data();
    pbuf = pheap.data();
  }
  const int stride = (k > kStackStar) ? n : detail::SmallLU::kMaxN;

  detail::SmallLU lu;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) lu.a[a][b] = 0.0;
  }
  for (int j = 0; j < k; ++j) {
    const double xj = nodes.points[lo + j];
    const double wj = we.value(std::abs(x - xj));
    wbuf[j] = wj;
    double* pj = pbuf + static_cast<std::size_t>(j) * stride;
    double v = 1.0;
    for (int a = 0; a < n; ++a) {
      pj[a] = v;
      v *= xj;
    }
    for (int a = 0; a < n; ++a) {
      const double wa = wj * pj[a];
      for (int b = a; b < n; ++b) lu.a[a][b] += wa * pj[b];
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < a; ++b) lu.a[a][b] = lu.a[b][a];
  }
  lu.factor(n);
  const double cond = lu.pivot_ratio();
  if (!(cond < kConditionLimit)) {
    throw_singular(ErrorCode::kSingularMomentMatrix, x, k, cond);
  }

  // lambda applied to the monomials analytically.
  double gamma[detail::SmallLU::kMaxN];
  {
    double v = 1.0;
    for (int a = 0; a < n; ++a) gamma[a] = 0.0;
    for (int a = order; a < n; ++a) {
      double coeff = 1.0;
      for (int i = 0; i < order; ++i) coeff *= static_cast<double>(a - i);
      gamma[a] = coeff * v;
      v *= x;
    }
  }
  lu.solve(gamma);

  row.eval_point = x;
  fill_indices(row, lo, k);
  row.values.resize(k);
  row.derivs.resize(0);
  for (int j = 0; j < k; ++j) {
    const double* pj = pbuf + static_cast<std::size_t>(j) * stride;
    double dot = 0.0;
    for (int a = 0; a < n; ++a) dot += pj[a] * gamma[a];
    row.values[j] = wbuf[j] * dot;
  }
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::kMls: return "mls";
    case Method::kMmls: return "mmls";
    case Method::kGmls: return "gmls";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  if (name == "mls") return Method::kMls;
  if (name == "mmls") return Method::kMmls;
  if (name == "gmls") return Method::kGmls;
  return std::nullopt;
}

MmlsSpec MmlsSpec::constant(int degree, double w) {
  MmlsSpec spec;
  spec.reg_weights = Eigen::VectorXd::Constant(std::max(degree - 1, 0), w);
  spec.validate(degree);
  return spec;
}

void MmlsSpec::validate(int degree) const {
  if (degree < 2) {
    throw Error(ErrorCode::kInvalidConfig, "MMLS requires basis degree >= 2");
  }
  if (reg_weights.size() != degree - 1) {
    throw Error(ErrorCode::kInvalidConfig,
                "MMLS needs m-1 regularization weights");
  }
  if ((reg_weights.array() <= 0.0).any()) {
    throw Error(ErrorCode::kInvalidConfig,
                "MMLS regularization weights must be positive");
  }
}

MomentAssembly assemble_moment(const NodeSet& nodes, const WeightSpec& weight,
                               const MonomialBasis& basis, double x) {
  WeightEvaluator we(weight);
  MomentWork work;
  build_moment(nodes, we, basis, x, work);
  factor_moment(work);
  MomentAssembly out;
  out.A = work.A;
  out.B = work.B;
  out.star = star(nodes, x, weight.delta);
  out.condition_estimate = work.cond;
  return out;
}

ShapeFunctionRow mls_shape(const NodeSet& nodes, const WeightSpec& weight,
                           const MonomialBasis& basis, double x,
                           int deriv_order) {
  WeightEvaluator we(weight);
  MomentWork work;
  ShapeFunctionRow row;
  weighted_ls_shape_into(nodes, we, basis, nullptr, x, deriv_order, work, row);
  return row;
}

ShapeFunctionRow mmls_shape(const NodeSet& nodes, const WeightSpec& weight,
                            const MonomialBasis& basis, const MmlsSpec& mmls,
                            double x, int deriv_order) {
  mmls.validate(basis.degree());
  WeightEvaluator we(weight);
  MomentWork work;
  ShapeFunctionRow row;
  weighted_ls_shape_into(nodes, we, basis, &mmls, x, deriv_order, work, row);
  return row;
}

ShapeFunctionRow gmls_coefficients(const NodeSet& nodes,
                                   const WeightSpec& weight,
                                   const MonomialBasis& basis,
                                   const FunctionalSpec& functional) {
  WeightEvaluator we(weight);
  ShapeFunctionRow row;
  gmls_into(nodes, we, basis, functional, row);
  return row;
}

void gmls_coefficients_into(const NodeSet& nodes, const WeightEvaluator& we,
                            const MonomialBasis& basis,
                            const FunctionalSpec& functional,
                            ShapeFunctionRow& row) {
  gmls_into(nodes, we, basis, functional, row);
}

std::vector<ShapeFunctionRow> shape_matrix(
    const NodeSet& nodes, const WeightSpec& weight, const MonomialBasis& basis,
    const std::vector<double>& eval_points, Method method, int deriv_order,
    const MmlsSpec* mmls) {
  if (method == Method::kMmls) {
    if (mmls == nullptr) {
      throw Error(ErrorCode::kInvalidConfig, "MMLS method needs an MmlsSpec");
    }
    mmls->validate(basis.degree());
  }
  WeightEvaluator we(weight);
  std::vector<ShapeFunctionRow> rows(eval_points.size());
  MomentWork work;
  for (std::size_t i = 0; i < eval_points.size(); ++i) {
    try {
      switch (method) {
        case Method::kMls:
          weighted_ls_shape_into(nodes, we, basis, nullptr, eval_points[i],
                                 deriv_order, work, rows[i]);
          break;
        case Method::kMmls:
          weighted_ls_shape_into(nodes, we, basis, mmls, eval_points[i],
                                 deriv_order, work, rows[i]);
          break;
        case Method::kGmls: {
          weighted_ls_shape_into(nodes, we, basis, nullptr, eval_points[i], 0,
                                 work, rows[i]);
          if (deriv_order == 1) {
            ShapeFunctionRow drow;
            gmls_into(nodes, we, basis,
                      FunctionalSpec::derivative(eval_points[i], 1), drow);
            rows[i].derivs = drow.values;
          }
          break;
        }
      }
    } catch (const Error& e) {
      std::ostringstream os;
      os << e.what() << " (eval point index " << i << ")";
      throw Error(e.code(), os.str());
    }
  }
  return rows;
}

}  // namespace meshfree
