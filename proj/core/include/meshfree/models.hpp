#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "meshfree/ode_system.hpp"

namespace meshfree {

/// A benchmark system, optionally with a closed-form solution.
struct Problem {
  std::string name;
  OdeSystem system;
  std::function<Eigen::VectorXd(double)> exact;  // empty when unavailable
};

/// u1' = -1002 u1 + 1000 u2^2, u2' = u1 - u2 - u2^2, u(0) = (1,1),
/// exact (e^{-2t}, e^{-t}); on [0, 1].
Problem example1();

/// x' = -x + 95 y, y' = -x - 97 y, u(0) = (1,1), eigenvalues {-2, -96};
/// exact ((95 e^{-2t} - 48 e^{-96t})/47, (48 e^{-96t} - e^{-2t})/47);
/// on [0, 5].
Problem example2();

/// u' = -u, u(0) = 1, exact e^{-t}; on [0, 1].
Problem decay_problem();

// ---------------------------------------------------------------------------
// ZIKV five-compartment transmission model (people x1..x3, mosquitoes y1,y2).
// ---------------------------------------------------------------------------

struct ZikvParams {
  double eta = 20.0;       // susceptible influx, people/day
  double mu = 0.0003;      // people natural death rate, 1/day
  double beta = 0.7913;    // mosquito -> person transmission probability
  double sigma = 0.6;      // pregnant woman -> mosquito transmission probability
  double gamma = 0.773;    // infected person -> mosquito transmission probability
  double epsilon = 0.0352; // adult mosquito death rate, 1/day
  double theta = 0.05;     // pregnant recovery rate, 1/day
  double alpha = 0.14;     // infected recovery rate, 1/day
  double rho = 30.0;       // mosquito influx, mosquitoes/day
  double f = 0.3;          // fraction of infections among non-pregnant people

  static ZikvParams table4(double f);
  void validate() const;  // throws kInvalidConfig
};

struct ZikvState {
  double x1 = 0, x2 = 0, x3 = 0, y1 = 0, y2 = 0;

  static ZikvState from_vector(const Eigen::VectorXd& u);
  Eigen::VectorXd to_vector() const;
};

/// The five compartment rates. Fractions with zero denominator (no people or
/// no mosquitoes) evaluate to zero. Throws kNegativeState on negative inputs.
Eigen::VectorXd zikv_rhs(const ZikvParams& params, const ZikvState& state);

/// Wraps the model as an OdeSystem with analytic Jacobian and the zero
/// initial state, on [0, t_end].
OdeSystem zikv_system(const ZikvParams& params, double t_end);

/// Endemic steady state under the given parameters (damped Newton from a
/// bracketing start).
Eigen::VectorXd zikv_equilibrium(const ZikvParams& params);

/// Scenario initial state: the endemic equilibrium displaced 20% (max
/// relative) along its slowest relaxation eigenvector, infected-pregnant
/// compartment starting below equilibrium. Gives trajectories that visibly
/// relax and stabilize inside [0, 40] while staying resolvable on coarse
/// collocation grids.
Eigen::VectorXd zikv_scenario_initial(const ZikvParams& params);

/// Named scenario: Table-4 parameters at the given f with the displaced
/// equilibrium start, on [0, t_end].
Problem zikv_scenario(double f, double t_end = 40.0);

/// Registered presets: example1, example2, decay, zikv-f03, zikv-f06,
/// zikv-f085, zikv-f10.
std::optional<Problem> find_problem(const std::string& name);
std::vector<std::string> problem_names();

// ---------------------------------------------------------------------------
// Independent verification oracle.
// ---------------------------------------------------------------------------

/// Dense trajectory from the adaptive embedded Runge-Kutta oracle; evaluation
/// between accepted steps is cubic Hermite on (t, y, y').
class ReferenceTrajectory {
 public:
  ReferenceTrajectory(std::vector<double> ts, std::vector<Eigen::VectorXd> ys,
                      std::vector<Eigen::VectorXd> fs, int rejected_steps);

  Eigen::VectorXd eval(double t) const;
  const std::vector<double>& times() const { return ts_; }
  int rejected_steps() const { return rejected_steps_; }

 private:
  std::vector<double> ts_;
  std::vector<Eigen::VectorXd> ys_;
  std::vector<Eigen::VectorXd> fs_;
  int rejected_steps_ = 0;
};

/// Adaptive Dormand-Prince 5(4) integration of the system over its t_span.
/// Independent of the shape-function and collocation code paths. Throws
/// kStepUnderflow (reporting t) if the controller cannot make progress.
ReferenceTrajectory reference_integrate(const OdeSystem& system,
                                        double rel_tol, double abs_tol);

}  // namespace meshfree
