#include "geodisc/integrator.hpp"

#include <algorithm>
#include <sstream>

#include "geodisc/errors.hpp"

namespace geodisc {

Vector step_residual(const CotangentLiftedMap& C, const HamiltonianSystem& H, double h,
                     const Vector& z0, const Vector& z1) {
  const CotangentTangent x = C.inverse(z0, z1);
  return concat(x.mdot - h * H.grad_p(x.m, x.p), x.pdot + h * H.grad_m(x.m, x.p));
}

Vector symplectic_step(const CotangentLiftedMap& C, const HamiltonianSystem& H, double h,
                       const Vector& z0, const StepOptions& options) {
  if (!(h > 0.0)) throw DomainViolation("symplectic_step: step size must be positive");
  require_dim(z0, 2 * C.base_dim(), "symplectic_step initial point");
  if (H.dim != C.base_dim()) throw DimensionMismatch("symplectic_step: H and C live on different spaces");
  require_finite(z0, "symplectic_step initial point");

  NewtonOptions newton;
  newton.tol = options.tol * std::max(1.0, z0.lpNorm<Eigen::Infinity>());
  newton.max_iter = options.max_iter;
  return newton_solve([&](const Vector& z1) { return step_residual(C, H, h, z0, z1); }, z0, newton).x;
}

std::vector<Vector> Trajectory::positions() const {
  std::vector<Vector> out;
  out.reserve(states.size());
  for (const SecondOrderState& s : states) out.push_back(s.q);
  return out;
}

Trajectory integrate(const CotangentLiftedMap& C, const HamiltonianSystem& H, double h, int N,
                     const SecondOrderState& z0, const StateGuard& guard,
                     const StepOptions& options) {
  if (N < 1) throw DomainViolation("integrate: need at least one step");
  if (H.dim % 2 != 0) throw DimensionMismatch("integrate: expects a Hamiltonian on T*(TQ)");
  const int n = H.dim / 2;

  Trajectory traj;
  traj.h = h;
  traj.n = n;
  traj.states.reserve(static_cast<std::size_t>(N) + 1);

  auto record = [&](const SecondOrderState& s) {
    if (guard) guard(s);
    traj.states.push_back(s);
    traj.H.push_back(H.H(s.m(), s.p()));
    traj.controls.push_back(s.p1);
  };

  record(z0);
  Vector z = z0.flat();
  for (int k = 0; k < N; ++k) {
    z = symplectic_step(C, H, h, z, options);
    record(SecondOrderState::from_flat(z, n));
  }
  return traj;
}

std::vector<double> el_residual_fourth_order(const std::vector<Vector>& q, double h,
                                             const VectorFunction& gradV) {
  if (q.size() < 5) {
    std::ostringstream os;
    os << "fourth-order residual needs at least 5 points, got " << q.size();
    throw TooFewPoints(os.str());
  }
  const double h4 = h * h * h * h;
  std::vector<double> out;
  for (std::size_t k = 2; k + 2 < q.size(); ++k) {
    const Vector d4 = (q[k + 2] - 4.0 * q[k + 1] + 6.0 * q[k] - 4.0 * q[k - 1] + q[k - 2]) / h4;
    out.push_back((d4 + gradV(q[k])).lpNorm<Eigen::Infinity>());
  }
  return out;
}

std::vector<double> el_residual_fourth_order(const Trajectory& traj, const VectorFunction& gradV) {
  return el_residual_fourth_order(traj.positions(), traj.h, gradV);
}

}  // namespace geodisc
