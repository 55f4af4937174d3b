#pragma once

// Second-order Lagrangians and Hamiltonians on T*(TQ).
//
// Sign convention for the second-order Hamilton equations:
//   qdot = dH/dp0,  qddot = dH/dp1,  p0' = -dH/dq,  p1' = -dH/dqdot.

#include <functional>

#include "geodisc/numeric.hpp"
#include "geodisc/smooth_map.hpp"

namespace geodisc {

struct Potential {
  std::function<double(const Vector&)> value;
  VectorFunction gradient;

  static Potential zero(int n);
};

/// H on T*M with its partial derivatives; m and p have length `dim`.
struct HamiltonianSystem {
  int dim = 0;
  std::function<double(const Vector&, const Vector&)> H;
  std::function<Vector(const Vector&, const Vector&)> grad_m;
  std::function<Vector(const Vector&, const Vector&)> grad_p;
};

/// H(q, qdot, p0, p1) = |p1|^2 / 2 + p0·qdot - V(q) on M = TQ, Q = R^n.
/// m = (q, qdot), p = (p0, p1).
HamiltonianSystem second_order_hamiltonian(int n, const Potential& V);

/// A point (q, qdot, p0, p1) of T*(TQ).
struct SecondOrderState {
  Vector q, qdot, p0, p1;

  Vector m() const { return concat(q, qdot); }
  Vector p() const { return concat(p0, p1); }
  Vector flat() const { return concat(m(), p()); }
  static SecondOrderState from_flat(const Vector& z, int n);
};

/// L(q, qdot, qddot) as a scalar map on R^(3n). Built with from_kernel the
/// momenta are computed exactly by nested Taylor arithmetic, otherwise by
/// central differences.
class SecondOrderLagrangian {
 public:
  SecondOrderLagrangian(int n, SmoothMap L);

  /// `kernel(q, qdot, qddot)` generic in the scalar type.
  template <class Kernel>
  static SecondOrderLagrangian from_kernel(int n, Kernel kernel) {
    return SecondOrderLagrangian(
        n, SmoothMap::from_kernel(3 * n, 1, [n, kernel](const auto& x) {
          using S = typename std::decay_t<decltype(x)>::Scalar;
          VecT<S> out(1);
          out[0] = kernel(VecT<S>(x.segment(0, n)), VecT<S>(x.segment(n, n)),
                          VecT<S>(x.segment(2 * n, n)));
          return out;
        }));
  }
  static SecondOrderLagrangian from_function(
      int n, std::function<double(const Vector&, const Vector&, const Vector&)> L);

  int dim() const { return n_; }
  double operator()(const Vector& q, const Vector& qdot, const Vector& qddot) const;
  const SmoothMap& map() const { return L_; }

 private:
  int n_;
  SmoothMap L_;
};

/// L = |qddot|^2 / 2 + V(q) with V given by a generic kernel, or V = 0.
SecondOrderLagrangian spline_lagrangian(int n);

/// Leg_L(q, qdot, qddot, q3) = (q, qdot, p0, p1) with p1 = dL/dqddot and
/// p0 = dL/dqdot - d/dt dL/dqddot along the jet.
SecondOrderState legendre_second_order(const SecondOrderLagrangian& L, const Vector& q,
                                       const Vector& qdot, const Vector& qddot, const Vector& q3);

/// E_L = qdot·p0 + qddot·p1 - L.
double lagrangian_energy(const SecondOrderLagrangian& L, const Vector& q, const Vector& qdot,
                         const Vector& qddot, const Vector& q3);

}  // namespace geodisc
