#include "geodisc/optimal_control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "geodisc/discretization.hpp"
#include "geodisc/errors.hpp"

namespace geodisc {

namespace {

int steps_for(double T, double h) {
  if (!(h > 0.0) || !(T > 0.0)) throw BadDiscretization("horizon and step size must be positive");
  const double ratio = T / h;
  const double N = std::round(ratio);
  if (N < 1.0 || std::abs(N * h - T) > 1e-9) {
    std::ostringstream os;
    os << "T = " << T << " is not a multiple of h = " << h;
    throw BadDiscretization(os.str());
  }
  return static_cast<int>(N);
}

void check_boundary(int n, const Boundary& b) {
  require_dim(b.q_start, n, "q_start");
  require_dim(b.qdot_start, n, "qdot_start");
  require_dim(b.q_end, n, "q_end");
  require_dim(b.qdot_end, n, "qdot_end");
}

}  // namespace

Potential obstacle_potential(int n, const Obstacle& obstacle) {
  if (n < 2) throw DimensionMismatch("obstacle potential needs at least two coordinates");
  if (!(obstacle.r > 0.0)) throw DomainViolation("obstacle radius must be positive");
  require_dim(obstacle.center, 2, "obstacle center");
  const Obstacle o = obstacle;
  return {
      [o](const Vector& q) { return o.tau / obstacle_clearance(o, q); },
      [o, n](const Vector& q) -> Vector {
        const double d = obstacle_clearance(o, q);
        Vector g = Vector::Zero(n);
        g[0] = -2.0 * o.tau * (q[0] - o.center[0]) / (d * d);
        g[1] = -2.0 * o.tau * (q[1] - o.center[1]) / (d * d);
        return g;
      }};
}

double obstacle_clearance(const Obstacle& obstacle, const Vector& q) {
  const double dx = q[0] - obstacle.center[0];
  const double dy = q[1] - obstacle.center[1];
  return dx * dx + dy * dy - obstacle.r * obstacle.r;
}

HamiltonianSystem OCProblem::hamiltonian() const { return second_order_hamiltonian(n, V); }

StateGuard OCProblem::guard() const {
  if (!obstacle) return {};
  const Obstacle o = *obstacle;
  return [o](const SecondOrderState& s) {
    const double c = obstacle_clearance(o, s.q);
    if (!(c > kSingularClearance)) {
      std::ostringstream os;
      os << "trajectory reached the obstacle boundary (clearance " << c << ")";
      throw SingularPotential(os.str());
    }
  };
}

OCProblem make_free_spline(int n, const Boundary& boundary, double T, double h) {
  check_boundary(n, boundary);
  OCProblem p;
  p.n = n;
  p.T = T;
  p.h = h;
  p.N = steps_for(T, h);
  p.V = Potential::zero(n);
  p.boundary = boundary;
  return p;
}

OCProblem make_obstacle_problem(int n, const Obstacle& obstacle, const Boundary& boundary,
                                double T, double h) {
  OCProblem p = make_free_spline(n, boundary, T, h);
  p.V = obstacle_potential(n, obstacle);
  p.obstacle = obstacle;
  for (const Vector* q : {&boundary.q_start, &boundary.q_end}) {
    if (!(obstacle_clearance(obstacle, *q) > 0.0)) {
      throw StartInsideObstacle("boundary point is not strictly outside the obstacle");
    }
  }
  return p;
}

OCProblem make_initial_value_problem(int n, std::optional<Obstacle> obstacle, double h, int N) {
  if (N < 1) throw BadDiscretization("need at least one step");
  if (!(h > 0.0)) throw BadDiscretization("step size must be positive");
  OCProblem p;
  p.n = n;
  p.h = h;
  p.N = N;
  p.T = N * h;
  p.V = obstacle ? obstacle_potential(n, *obstacle) : Potential::zero(n);
  p.obstacle = std::move(obstacle);
  return p;
}

double cost_of(const Trajectory& traj, const OCProblem& prob, CostRule rule) {
  if (traj.states.empty()) throw TooFewPoints("cost_of: empty trajectory");
  auto running = [&](int k) {
    const SecondOrderState& s = traj.states[static_cast<std::size_t>(k)];
    double c = 0.5 * traj.controls[static_cast<std::size_t>(k)].squaredNorm();
    if (prob.cost_includes_potential) c += prob.V.value(s.q);
    return c;
  };
  double J = 0.0;
  const int N = traj.steps();
  for (int k = 0; k < N; ++k) {
    J += rule == CostRule::kLeftEndpoint ? running(k) : 0.5 * (running(k) + running(k + 1));
  }
  return traj.h * J;
}

ShootingResult shoot(const OCProblem& prob, const CotangentLiftedMap& C, const Vector& p0_guess,
                     const Vector& p1_guess, const ShootingOptions& options) {
  if (!prob.boundary) throw DomainViolation("shoot: problem has no boundary data");
  const int n = prob.n;
  require_dim(p0_guess, n, "p0 guess");
  require_dim(p1_guess, n, "p1 guess");
  require_finite(concat(p0_guess, p1_guess), "costate guess");
  const Boundary& b = *prob.boundary;
  const HamiltonianSystem H = prob.hamiltonian();
  const StateGuard guard = prob.guard();

  auto flow = [&](const Vector& costates) {
    const SecondOrderState init{b.q_start, b.qdot_start, costates.head(n), costates.tail(n)};
    try {
      return integrate(C, H, prob.h, prob.N, init, guard);
    } catch (const SingularPotential& e) {
      throw ObstaclePenetration(std::string("shooting trial entered the obstacle: ") + e.what());
    }
  };
  auto defect_of = [&](const Trajectory& traj) -> Vector {
    const SecondOrderState& end = traj.states.back();
    return concat(end.q - b.q_end, end.qdot - b.qdot_end);
  };

  NewtonOptions newton;
  // A zero tolerance is allowed and simply runs Newton until it stalls.
  newton.tol = std::max(options.tol, std::numeric_limits<double>::denorm_min());
  newton.max_iter = options.max_iter;
  newton.backtracking = true;

  ShootingResult result;
  Vector costates = concat(p0_guess, p1_guess);
  flow(costates);  // a guess inside the obstacle is reported to the caller
  try {
    const NewtonSolution sol =
        newton_solve([&](const Vector& c) { return defect_of(flow(c)); }, costates, newton);
    costates = sol.x;
    result.iterations = sol.iterations;
    result.converged = true;
  } catch (const NonConvergence& e) {
    costates = e.best();
    result.iterations = e.iterations();
  }
  result.p0 = costates.head(n);
  result.p1 = costates.tail(n);
  result.trajectory = flow(costates);
  result.defect = defect_of(result.trajectory).lpNorm<Eigen::Infinity>();
  result.converged = result.converged && result.defect <= options.tol;
  result.cost = cost_of(result.trajectory, prob, options.cost_rule);
  return result;
}

SimulationReport simulate(const OCProblem& prob, const CotangentLiftedMap& C,
                          const SecondOrderState& init) {
  for (const Vector* v : {&init.q, &init.qdot, &init.p0, &init.p1}) {
    require_dim(*v, prob.n, "initial state");
  }
  if (prob.obstacle && !(obstacle_clearance(*prob.obstacle, init.q) > 0.0)) {
    throw StartInsideObstacle("initial position is not strictly outside the obstacle");
  }
  SimulationReport report;
  report.trajectory = integrate(C, prob.hamiltonian(), prob.h, prob.N, init, prob.guard());
  const Trajectory& traj = report.trajectory;
  for (double H : traj.H) report.H_drift = std::max(report.H_drift, std::abs(H - traj.H.front()));
  if (prob.obstacle) {
    for (const SecondOrderState& s : traj.states) {
      report.clearance.push_back(obstacle_clearance(*prob.obstacle, s.q));
    }
    report.min_clearance = *std::min_element(report.clearance.begin(), report.clearance.end());
  }
  report.cost = cost_of(traj, prob);
  return report;
}

SecondOrderState SE2ExperimentConfig::default_init() {
  return {(Vector(3) << -3.0, 1.5, 0.0).finished(), (Vector(3) << 1.5, 0.0, 0.5).finished(),
          Vector::Zero(3), (Vector(3) << 0.0, -0.1, 0.0).finished()};
}

SimulationReport run_se2_experiment(const SE2ExperimentConfig& config) {
  Obstacle obstacle;
  obstacle.tau = config.tau;
  obstacle.r = config.r;
  const OCProblem prob = make_initial_value_problem(3, obstacle, config.h, config.N);
  return simulate(prob, lifted_cotangent_map(midpoint_map(3)), config.init);
}

}  // namespace geodisc
