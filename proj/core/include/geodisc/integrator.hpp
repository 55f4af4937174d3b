#pragma once

#include <functional>
#include <vector>

#include "geodisc/hamiltonian.hpp"
#include "geodisc/lifts.hpp"
#include "geodisc/numeric.hpp"

namespace geodisc {

struct StepOptions {
  /// Newton tolerance on the residual, scaled by max(1, |z0|_inf).
  double tol = 1e-12;
  int max_iter = 50;
};

/// One step of the integrator generated by a cotangent-lifted map C.
///
/// Finds z1 such that (m, p, mdot, pdot) = C.inverse(z0, z1) satisfies
/// mdot = h dH/dp(m, p) and pdot = -h dH/dm(m, p). Phase points are (m, p).
Vector symplectic_step(const CotangentLiftedMap& C, const HamiltonianSystem& H, double h,
                       const Vector& z0, const StepOptions& options = {});

/// Residual of the implicit step equation at (z0, z1).
Vector step_residual(const CotangentLiftedMap& C, const HamiltonianSystem& H, double h,
                     const Vector& z0, const Vector& z1);

struct Trajectory {
  double h = 0.0;
  int n = 0;
  std::vector<SecondOrderState> states;  // N + 1 states
  std::vector<double> H;                  // H at each state
  std::vector<Vector> controls;           // u = p1 at each state

  int steps() const { return static_cast<int>(states.size()) - 1; }
  double time(int k) const { return k * h; }
  std::vector<Vector> positions() const;
};

/// Called on every new state; may throw to abort the run.
using StateGuard = std::function<void(const SecondOrderState&)>;

/// N steps on T*(TQ). H must be a second-order Hamiltonian (dim = 2n).
Trajectory integrate(const CotangentLiftedMap& C, const HamiltonianSystem& H, double h, int N,
                     const SecondOrderState& z0, const StateGuard& guard = {},
                     const StepOptions& options = {});

/// Max-norm of (q_{k+2} - 4 q_{k+1} + 6 q_k - 4 q_{k-1} + q_{k-2}) / h^4 + gradV(q_k)
/// at every interior node k = 2 .. N-2. Throws TooFewPoints below 5 samples.
std::vector<double> el_residual_fourth_order(const std::vector<Vector>& q, double h,
                                             const VectorFunction& gradV);
std::vector<double> el_residual_fourth_order(const Trajectory& traj, const VectorFunction& gradV);

}  // namespace geodisc
