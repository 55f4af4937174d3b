#pragma once

#include <optional>
#include <vector>

#include "geodisc/hamiltonian.hpp"
#include "geodisc/integrator.hpp"
#include "geodisc/lifts.hpp"

namespace geodisc {

struct Boundary {
  Vector q_start, qdot_start, q_end, qdot_end;
};

/// Circular obstacle acting on the first two coordinates.
struct Obstacle {
  double tau = 0.0;  // potential strength
  double r = 1.0;    // radius
  Vector center = Vector::Zero(2);
};

/// V(q) = tau / ((x - cx)^2 + (y - cy)^2 - r^2), independent of the
/// remaining coordinates. Requires n >= 2.
Potential obstacle_potential(int n, const Obstacle& obstacle);

/// (x - cx)^2 + (y - cy)^2 - r^2.
double obstacle_clearance(const Obstacle& obstacle, const Vector& q);

/// Clearance at or below which a trajectory counts as touching the obstacle.
inline constexpr double kSingularClearance = 1e-9;

struct OCProblem {
  int n = 0;
  double T = 0.0;
  double h = 0.0;
  int N = 0;
  Potential V;
  std::optional<Obstacle> obstacle;
  std::optional<Boundary> boundary;
  /// Whether the running cost contains V besides |u|^2 / 2.
  bool cost_includes_potential = true;

  HamiltonianSystem hamiltonian() const;
  /// Throws SingularPotential when q touches the obstacle; no-op otherwise.
  StateGuard guard() const;
};

/// V = 0 problem with T = N h. Throws BadDiscretization if T is not a
/// multiple of h within 1e-9.
OCProblem make_free_spline(int n, const Boundary& boundary, double T, double h);

/// Throws StartInsideObstacle if either boundary point is not strictly
/// outside the obstacle.
OCProblem make_obstacle_problem(int n, const Obstacle& obstacle, const Boundary& boundary,
                                double T, double h);

/// Initial-value problem without boundary data, optionally with an obstacle.
OCProblem make_initial_value_problem(int n, std::optional<Obstacle> obstacle, double h, int N);

enum class CostRule { kLeftEndpoint, kTrapezoid };

/// J = sum_k h (|u_k|^2 / 2 + V(q_k)), V included only when the problem says so.
double cost_of(const Trajectory& traj, const OCProblem& prob,
               CostRule rule = CostRule::kLeftEndpoint);

struct ShootingOptions {
  double tol = 1e-10;  // on the terminal defect, max-norm
  int max_iter = 50;
  CostRule cost_rule = CostRule::kLeftEndpoint;
};

struct ShootingResult {
  Vector p0, p1;  // initial costates
  Trajectory trajectory;
  double defect = 0.0;
  double cost = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Single shooting on the initial costates (p0, p1) so that the flow of the
/// integrator hits (q_end, qdot_end) at time T. Trials that run into the
/// obstacle are rejected and the Newton step is halved.
///
/// Returns the best iterate with converged = false when Newton fails.
/// Throws ObstaclePenetration when the initial guess itself hits the obstacle.
ShootingResult shoot(const OCProblem& prob, const CotangentLiftedMap& C, const Vector& p0_guess,
                     const Vector& p1_guess, const ShootingOptions& options = {});

struct SimulationReport {
  Trajectory trajectory;
  std::vector<double> clearance;  // empty without an obstacle
  double min_clearance = 0.0;
  double H_drift = 0.0;  // max_k |H_k - H_0|
  double cost = 0.0;
};

/// Forward integration of an initial-value problem.
SimulationReport simulate(const OCProblem& prob, const CotangentLiftedMap& C,
                          const SecondOrderState& init);

struct SE2ExperimentConfig {
  double tau = 1e-20;
  double r = 1.0;
  double h = 0.01;
  int N = 400;
  SecondOrderState init = default_init();

  /// Starts left of the obstacle, moving right and curving down past it.
  static SecondOrderState default_init();
};

/// Rigid body in the plane, chart coordinates (x, y, theta), integrated with
/// the lifted midpoint map. Throws SingularPotential if the body touches the
/// obstacle and StartInsideObstacle if it starts inside.
SimulationReport run_se2_experiment(const SE2ExperimentConfig& config);

}  // namespace geodisc
