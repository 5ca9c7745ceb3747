#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "meshfree/basis.hpp"
#include "meshfree/nodes.hpp"
#include "meshfree/weights.hpp"

namespace meshfree {

/// Moment matrices declare as singular above this LU pivot-ratio estimate.
/// Rank-deficient stars land at ~1e16 or worse; the worst legitimately
/// solvable configurations in the experiments sit near 4e14.
inline constexpr double kConditionLimit = 1e15;

/// A(x) = P^T W P and B(x) = P^T W restricted to the star of x.
struct MomentAssembly {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;  // (m+1) x card(star)
  Star star;
  double condition_estimate = 0.0;
};

/// One evaluation point's shape values a_j(x) over its star, plus first
/// derivatives when requested.
struct ShapeFunctionRow {
  double eval_point = 0.0;
  std::vector<int> indices;
  Eigen::VectorXd values;
  Eigen::VectorXd derivs;  // empty unless deriv_order == 1

  int cardinality() const { return static_cast<int>(indices.size()); }
};

/// Positive penalties applied to the quadratic-and-higher polynomial
/// coefficients; keeps the regularized moment matrix invertible on stars too
/// small for the full degree.
struct MmlsSpec {
  Eigen::VectorXd reg_weights;  // m-1 entries for degrees 2..m

  static MmlsSpec constant(int degree, double w);
  void validate(int degree) const;
};

/// A linear functional to approximate directly from nodal values: point
/// evaluation or a derivative of given order, at a fixed location.
struct FunctionalSpec {
  enum class Kind { kPointEvaluation, kDerivative };

  Kind kind = Kind::kPointEvaluation;
  double location = 0.0;
  int order = 0;

  static FunctionalSpec point_evaluation(double x) {
    return {Kind::kPointEvaluation, x, 0};
  }
  static FunctionalSpec derivative(double x, int order) {
    return {Kind::kDerivative, x, order};
  }
};

enum class Method { kMls, kMmls, kGmls };

std::string to_string(Method method);
std::optional<Method> parse_method(const std::string& name);

/// Builds A = P^T W P, B = P^T W over the star of x, with a condition
/// estimate taken from the LU pivots. Throws kEmptyStar if no node lies in
/// the support.
MomentAssembly assemble_moment(const NodeSet& nodes, const WeightSpec& weight,
                               const MonomialBasis& basis, double x);

/// MLS shape row: values = p(x)^T A^{-1} B. With deriv_order = 1 the
/// derivative row follows the product rule
///   d(p^T A^{-1} B) = p'^T A^{-1} B - p^T A^{-1} A' A^{-1} B + p^T A^{-1} B'.
/// Throws kSingularMomentMatrix (reporting cardinality and the condition
/// estimate) when the star underdetermines the basis.
ShapeFunctionRow mls_shape(const NodeSet& nodes, const WeightSpec& weight,
                           const MonomialBasis& basis, double x,
                           int deriv_order = 0);

/// MMLS shape row: A replaced by A + H, H = diag(0, 0, w_1, ..., w_{m-1}).
ShapeFunctionRow mmls_shape(const NodeSet& nodes, const WeightSpec& weight,
                            const MonomialBasis& basis, const MmlsSpec& mmls,
                            double x, int deriv_order = 0);

/// GMLS functional coefficients a_lambda = lambda(p)^T A^{-1} B, with
/// lambda applied to the monomials analytically. The row comes back in
/// `values` (a point-evaluation functional reproduces mls_shape exactly).
ShapeFunctionRow gmls_coefficients(const NodeSet& nodes,
                                   const WeightSpec& weight,
                                   const MonomialBasis& basis,
                                   const FunctionalSpec& functional);

/// In-place GMLS row for batch loops: hoist the WeightEvaluator and reuse the
/// row's storage across calls. Values match gmls_coefficients exactly.
void gmls_coefficients_into(const NodeSet& nodes, const WeightEvaluator& we,
                            const MonomialBasis& basis,
                            const FunctionalSpec& functional,
                            ShapeFunctionRow& row);

/// Batch driver; rows come back in eval-point order. Errors are annotated
/// with the offending point.
std::vector<ShapeFunctionRow> shape_matrix(
    const NodeSet& nodes, const WeightSpec& weight, const MonomialBasis& basis,
    const std::vector<double>& eval_points, Method method, int deriv_order,
    const MmlsSpec* mmls = nullptr);

}  // namespace meshfree
