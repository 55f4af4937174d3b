#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "geodisc/errors.hpp"
#include "geodisc/optimal_control.hpp"
#include "test_util.hpp"

namespace geodisc {
namespace {

using testing::max_abs;
using testing::vec;

const CotangentLiftedMap& lifted_midpoint(int n) {
  static const CotangentLiftedMap c1 = lifted_cotangent_map(midpoint_map(1));
  static const CotangentLiftedMap c2 = lifted_cotangent_map(midpoint_map(2));
  static const CotangentLiftedMap c3 = lifted_cotangent_map(midpoint_map(3));
  return n == 1 ? c1 : n == 2 ? c2 : c3;
}

Boundary rest_to_rest(const Vector& a, const Vector& b) {
  return Boundary{a, Vector::Zero(a.size()), b, Vector::Zero(b.size())};
}

ShootingResult free_spline_solution(double h) {
  const OCProblem prob = make_free_spline(1, rest_to_rest(vec({0}), vec({1})), 1.0, h);
  return shoot(prob, lifted_midpoint(1), vec({0}), vec({0}));
}

TEST(Problems, FreeSplineIsValid) {
  const OCProblem prob = make_free_spline(1, rest_to_rest(vec({0}), vec({1})), 1.0, 0.01);
  EXPECT_EQ(prob.N, 100);
  EXPECT_EQ(prob.n, 1);
  EXPECT_FALSE(prob.obstacle.has_value());
}

TEST(Problems, StepMustDivideTheHorizon) {
  EXPECT_THROW(make_free_spline(1, rest_to_rest(vec({0}), vec({1})), 1.0, 0.03), BadDiscretization);
  EXPECT_THROW(make_free_spline(1, rest_to_rest(vec({0}), vec({1})), 1.0, -0.1), BadDiscretization);
}

TEST(Problems, BoundaryDimensionsAreChecked) {
  EXPECT_THROW(make_free_spline(2, rest_to_rest(vec({0}), vec({1})), 1.0, 0.1), DimensionMismatch);
}

TEST(Problems, StartInsideObstacle) {
  const Obstacle obs{1.0, 1.0, Vector::Zero(2)};
  EXPECT_THROW(make_obstacle_problem(2, obs, rest_to_rest(vec({0.2, 0}), vec({3, 0})), 1.0, 0.1),
               StartInsideObstacle);
  EXPECT_THROW(make_obstacle_problem(2, obs, rest_to_rest(vec({-3, 0}), vec({1, 0})), 1.0, 0.1),
               StartInsideObstacle);
}

TEST(ObstaclePotential, ClosedFormValues) {
  const Potential V = obstacle_potential(3, Obstacle{1.0, 1.0, Vector::Zero(2)});
  EXPECT_NEAR(V.value(vec({2, 0, 0})), 1.0 / 3.0, 1e-15);
  EXPECT_LE(max_abs(V.gradient(vec({2, 0, 0})) - vec({-4.0 / 9.0, 0, 0})), 1e-15);
  const Potential tiny = obstacle_potential(3, Obstacle{1e-20, 1.0, Vector::Zero(2)});
  EXPECT_NEAR(tiny.value(vec({2, 0, 0})), 3.33e-21, 0.01e-21);
}

TEST(ObstaclePotential, IgnoresTheAngleAndHonoursTheCenter) {
  const Potential V = obstacle_potential(3, Obstacle{2.0, 0.5, vec({1, -1})});
  EXPECT_DOUBLE_EQ(V.value(vec({2, -1, 0})), V.value(vec({2, -1, 1.3})));
  EXPECT_NEAR(V.value(vec({2, -1, 0})), 2.0 / 0.75, 1e-14);
  EXPECT_EQ(V.gradient(vec({2, -1, 5}))[2], 0.0);
  EXPECT_THROW(obstacle_potential(1, Obstacle{}), DimensionMismatch);
}

TEST(Cost, SingleStepArithmetic) {
  const OCProblem prob = make_initial_value_problem(1, std::nullopt, 0.1, 1);
  Trajectory t;
  t.h = 0.1;
  t.n = 1;
  t.states = {SecondOrderState::from_flat(vec({0, 0, 0, 2}), 1), SecondOrderState::from_flat(vec({0, 0, 0, 2}), 1)};
  t.controls = {vec({2}), vec({2})};
  t.H = {2, 2};
  EXPECT_NEAR(cost_of(t, prob), 0.2, 1e-15);
  EXPECT_NEAR(cost_of(t, prob, CostRule::kTrapezoid), 0.2, 1e-15);
}

TEST(Cost, ZeroControlCostIsThePotentialSum) {
  const Obstacle obs{1.0, 1.0, Vector::Zero(2)};
  const OCProblem prob = make_initial_value_problem(2, obs, 0.1, 2);
  Trajectory t;
  t.h = 0.1;
  t.n = 2;
  for (double x : {2.0, 3.0, 4.0}) {
    t.states.push_back(SecondOrderState{vec({x, 0}), Vector::Zero(2), Vector::Zero(2), Vector::Zero(2)});
    t.controls.push_back(Vector::Zero(2));
    t.H.push_back(0.0);
  }
  EXPECT_NEAR(cost_of(t, prob), 0.1 * (1.0 / 3.0 + 1.0 / 8.0), 1e-15);
  OCProblem no_v = prob;
  no_v.cost_includes_potential = false;
  EXPECT_EQ(cost_of(t, no_v), 0.0);
  const OCProblem free = make_initial_value_problem(2, std::nullopt, 0.1, 2);
  EXPECT_EQ(cost_of(t, free), 0.0);
}

TEST(Cost, ExactCubicSampledAtFineStep) {
  // q = 3t^2 - 2t^3 has u = qddot = 6 - 12t and J = 6.
  const double h = 0.01;
  const OCProblem prob = make_free_spline(1, rest_to_rest(vec({0}), vec({1})), 1.0, h);
  Trajectory t;
  t.h = h;
  t.n = 1;
  for (int k = 0; k <= 100; ++k) {
    const double s = k * h;
    const double u = 6 - 12 * s;
    t.states.push_back(SecondOrderState::from_flat(vec({3 * s * s - 2 * s * s * s, 6 * s - 6 * s * s, 12, u}), 1));
    t.controls.push_back(vec({u}));
    t.H.push_back(0.0);
  }
  EXPECT_NEAR(cost_of(t, prob), 6.0, 0.05);
  EXPECT_NEAR(cost_of(t, prob, CostRule::kTrapezoid), 6.0, 0.05);
}

TEST(Shoot, FreeSplineMatchesContinuousOracle) {
  const ShootingResult r = free_spline_solution(0.01);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.defect, 1e-10);
  EXPECT_NEAR(r.p0[0], 12.0, 0.02 * 12.0);
  EXPECT_NEAR(r.p1[0], 6.0, 0.02 * 6.0);
  EXPECT_NEAR(r.p0[0], 12.0, 12.0 * 0.01 * 0.01 * 2);  // O(h^2)
  EXPECT_NEAR(r.p1[0], 6.0, 6.0 * 0.01 * 0.01 * 2);
  EXPECT_NEAR(r.cost, 6.0, 0.06);
  EXPECT_EQ(r.trajectory.steps(), 100);
  EXPECT_LE(max_abs(r.trajectory.states.back().q - vec({1})), 1e-10);
}

TEST(Shoot, RestPointIsTrivial) {
  const OCProblem prob = make_free_spline(2, rest_to_rest(vec({1, -1}), vec({1, -1})), 1.0, 0.1);
  const ShootingResult r = shoot(prob, lifted_midpoint(2), Vector::Zero(2), Vector::Zero(2));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_LE(max_abs(r.p0) + max_abs(r.p1), 0.0);
  EXPECT_EQ(r.cost, 0.0);
}

TEST(Shoot, ObstacleStraddlingBoundaryKeepsClearance) {
  const Obstacle obs{1e-3, 1.0, Vector::Zero(2)};
  const OCProblem prob = make_obstacle_problem(2, obs, rest_to_rest(vec({-2, 1.2}), vec({2, 1.2})), 2.0, 0.02);
  const ShootingResult r = shoot(prob, lifted_midpoint(2), Vector::Zero(2), Vector::Zero(2));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.defect, 1e-10);
  for (const SecondOrderState& s : r.trajectory.states) EXPECT_GT(obstacle_clearance(obs, s.q), 0.0);
}

TEST(Shoot, TrajectorySatisfiesTheSplineEquations) {
  const ShootingResult r = free_spline_solution(0.01);
  for (double v : el_residual_fourth_order(r.trajectory, [](const Vector& x) { return Vector(Vector::Zero(x.size())); })) {
    EXPECT_LE(v, 1e-3);
  }
}

TEST(Shoot, CostDecreasesUnderRefinement) {
  double previous = INFINITY;
  for (double h : {0.04, 0.02, 0.01}) {
    const ShootingResult r = free_spline_solution(h);
    ASSERT_TRUE(r.converged);
    EXPECT_LT(r.cost, previous) << h;
    EXPECT_GT(r.cost, 6.0) << h;
    previous = r.cost;
  }
}

TEST(Shoot, IsDeterministic) {
  const ShootingResult a = free_spline_solution(0.02);
  const ShootingResult b = free_spline_solution(0.02);
  EXPECT_EQ(a.p0, b.p0);
  EXPECT_EQ(a.p1, b.p1);
  EXPECT_EQ(a.cost, b.cost);
  ASSERT_EQ(a.trajectory.states.size(), b.trajectory.states.size());
  for (std::size_t k = 0; k < a.trajectory.states.size(); ++k) {
    EXPECT_EQ(a.trajectory.states[k].flat(), b.trajectory.states[k].flat());
  }
}

TEST(Shoot, ZeroToleranceDoesNotConverge) {
  const OCProblem prob = make_free_spline(1, rest_to_rest(vec({0}), vec({1})), 1.0, 0.05);
  ShootingOptions opt;
  opt.tol = 0.0;
  opt.max_iter = 5;
  const ShootingResult r = shoot(prob, lifted_midpoint(1), vec({0}), vec({0}), opt);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.defect, 1e-9);
}

TEST(Shoot, GuessThroughTheObstacleIsReported) {
  const Obstacle obs{1e-3, 1.0, Vector::Zero(2)};
  const OCProblem prob = make_obstacle_problem(2, obs, rest_to_rest(vec({-2, 0}), vec({2, 0.5})), 2.0, 0.02);
  EXPECT_THROW(shoot(prob, lifted_midpoint(2), vec({0, 0}), vec({8, 0})), ObstaclePenetration);
}

TEST(Simulate, StationaryAtEquilibrium) {
  SE2ExperimentConfig config;
  config.init = SecondOrderState{vec({2, 0, 0}), Vector::Zero(3), Vector::Zero(3), Vector::Zero(3)};
  const SimulationReport r = run_se2_experiment(config);
  ASSERT_EQ(r.trajectory.steps(), 400);
  for (const SecondOrderState& s : r.trajectory.states) {
    EXPECT_LE(max_abs(s.q - config.init.q), 1e-12);
  }
  EXPECT_LE(r.H_drift, 1e-15);
}

TEST(Simulate, DefaultSe2RunCompletes) {
  const SimulationReport r = run_se2_experiment(SE2ExperimentConfig{});
  EXPECT_EQ(r.trajectory.steps(), 400);
  EXPECT_EQ(r.clearance.size(), 401u);
  EXPECT_GT(r.min_clearance, 0.0);
  EXPECT_LE(r.H_drift, 1e-3 * std::max(1.0, std::abs(r.trajectory.H[0])));
}

TEST(Simulate, WithoutPotentialEnergyIsExact) {
  SE2ExperimentConfig config;
  config.tau = 0.0;
  const SimulationReport r = run_se2_experiment(config);
  EXPECT_EQ(r.trajectory.steps(), 400);
  EXPECT_LE(r.H_drift, 1e-10);
}

TEST(Simulate, HittingTheObstacleRaisesBeforeNegativeClearance) {
  SE2ExperimentConfig config;
  config.init = SecondOrderState{vec({-3, 0, 0}), vec({2, 0, 0}), Vector::Zero(3), Vector::Zero(3)};
  EXPECT_THROW(run_se2_experiment(config), SingularPotential);
}

TEST(Simulate, StartInsideIsRejected) {
  SE2ExperimentConfig config;
  config.init = SecondOrderState{vec({0.5, 0, 0}), Vector::Zero(3), Vector::Zero(3), Vector::Zero(3)};
  EXPECT_THROW(run_se2_experiment(config), StartInsideObstacle);
}

TEST(Simulate, GuardedTrajectoriesNeverReportNonPositiveClearance) {
  const Obstacle obs{1e-4, 1.0, Vector::Zero(2)};
  const OCProblem prob = make_initial_value_problem(3, obs, 0.01, 300);
  testing::Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    SecondOrderState init{vec({-2.5, rng.uniform(-1.5, 1.5), 0}), vec({2, 0, 0}), Vector::Zero(3),
                          Vector::Zero(3)};
    try {
      const SimulationReport r = simulate(prob, lifted_midpoint(3), init);
      for (double c : r.clearance) EXPECT_GT(c, kSingularClearance);
    } catch (const SingularPotential&) {
    }
  }
}

}  // namespace
}  // namespace geodisc
