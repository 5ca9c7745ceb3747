#pragma once

#include <string>
#include <vector>

#include "meshfree/collocation.hpp"
#include "meshfree/models.hpp"

namespace meshfree {

/// Per-function error norms over a sample grid, plus wall-clock timings
/// filled in by the run harness.
struct ErrorReport {
  std::vector<double> max_rel_err;  // max|err| / max|exact| per function
  std::vector<double> max_abs_err;
  std::string grid_description;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Compares the field against the exact solution on the sample grid. The
/// relative norm is grid-uniform: max|err| / max|exact|; denominators below
/// 1e-14 fall back to the absolute error.
ErrorReport measure(const SolutionField& field,
                    const std::function<Eigen::VectorXd(double)>& exact,
                    const std::vector<double>& sample_points);

/// 10x-finer uniform sample grid over [a, b] for n_nodes nodes.
std::vector<double> sample_grid(double a, double b, int n_nodes);

struct ConvergenceFit {
  std::vector<double> h_values;
  std::vector<double> errors;      // max over functions of max_rel_err
  double fitted_rate = 0.0;        // least-squares slope of log err vs log h
  double theoretical_rate = 0.0;   // m + 1 - mu with mu = 1
  bool degenerate = false;         // all errors at machine precision
};

/// Solves the problem at every h, measures against the exact solution, and
/// fits the empirical convergence rate. h_list must hold >= 3 decreasing
/// values (kInvalidConfig otherwise); solve failures propagate annotated
/// with the offending h.
ConvergenceFit convergence_study(const Problem& problem, Method method,
                                 int basis_degree,
                                 const std::vector<double>& h_list,
                                 double delta_multiplier,
                                 KernelKind kernel = KernelKind::kSpline,
                                 double mmls_reg = 0.1);

struct StarReportRow {
  double probe = 0.0;
  int cardinality = 0;
  double star_mesh_size = 0.0;
  bool unisolvent = false;
};

/// Star diagnostics: per-probe cardinality and mesh-size, the global overlap
/// bound E, the global mesh-size bound R, and Theorem-4.1 pass/fail at the
/// given degree.
struct StarReport {
  std::vector<StarReportRow> rows;
  int max_cardinality = 0;    // E
  double max_mesh_size = 0.0; // R
  bool all_unisolvent = false;
};

StarReport star_report(const NodeSet& nodes, double delta,
                       const std::vector<double>& probes, int degree);

/// Wall-clock comparison of derivative-row assembly: the full product-rule
/// MLS path vs GMLS derivative coefficients, median of `repetitions` sweeps
/// over the eval points.
struct CostComparison {
  double mls_seconds = 0.0;
  double gmls_seconds = 0.0;
  double ratio = 0.0;  // mls_seconds / gmls_seconds
};

CostComparison cost_compare(const NodeSet& nodes, const WeightSpec& weight,
                            const MonomialBasis& basis,
                            const std::vector<double>& eval_points,
                            int repetitions = 5);

}  // namespace meshfree
