#include <cmath>

#include <gtest/gtest.h>

#include "geodisc/errors.hpp"
#include "geodisc/hamiltonian.hpp"
#include "geodisc/optimal_control.hpp"
#include "test_util.hpp"

namespace geodisc {
namespace {

using testing::max_abs;
using testing::vec;

Potential unit_obstacle(double tau) { return obstacle_potential(3, Obstacle{tau, 1.0, Vector::Zero(2)}); }

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x) {
  Vector g(x.size());
  const double eps = 1e-6;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector a = x, b = x;
    a[i] += eps;
    b[i] -= eps;
    g[i] = (f(a) - f(b)) / (2 * eps);
  }
  return g;
}

TEST(SecondOrderHamiltonian, FreeSplineValues) {
  const HamiltonianSystem H = second_order_hamiltonian(1, Potential::zero(1));
  EXPECT_EQ(H.dim, 2);
  EXPECT_DOUBLE_EQ(H.H(vec({0, 1}), vec({2, 3})), 6.5);
  EXPECT_DOUBLE_EQ(H.H(vec({0.3, -2}), vec({0, 0})), 0.0);
}

TEST(SecondOrderHamiltonian, ObstacleValue) {
  const HamiltonianSystem H = second_order_hamiltonian(3, unit_obstacle(1.0));
  const Vector m = vec({2, 0, 0, 0, 0, 0});
  const Vector p = vec({0, 0, 0, 1, 0, 0});
  EXPECT_NEAR(H.H(m, p), 0.5 - 1.0 / 3.0, 1e-15);
}

TEST(SecondOrderHamiltonian, GradientsMatchFiniteDifferences) {
  testing::Rng rng(41);
  for (const Potential& V : {Potential::zero(3), unit_obstacle(1.0), unit_obstacle(0.05)}) {
    const HamiltonianSystem H = second_order_hamiltonian(3, V);
    for (int trial = 0; trial < 20; ++trial) {
      Vector m = rng.vector(6, -3.0, 3.0);
      m.head(2) = m.head(2).normalized() * rng.uniform(1.5, 3.0);
      const Vector p = rng.vector(6, -3.0, 3.0);
      const Vector gm = fd_gradient([&](const Vector& x) { return H.H(x, p); }, m);
      const Vector gp = fd_gradient([&](const Vector& x) { return H.H(m, x); }, p);
      EXPECT_LE(max_abs(H.grad_m(m, p) - gm), 1e-6);
      EXPECT_LE(max_abs(H.grad_p(m, p) - gp), 1e-6);
    }
  }
}

TEST(Legendre, SplineLagrangianExample) {
  const SecondOrderState s = legendre_second_order(spline_lagrangian(1), vec({0}), vec({1}), vec({2}), vec({3}));
  EXPECT_NEAR(s.p0[0], -3.0, 1e-14);
  EXPECT_NEAR(s.p1[0], 2.0, 1e-14);
  EXPECT_EQ(s.q[0], 0.0);
  EXPECT_EQ(s.qdot[0], 1.0);
}

TEST(Legendre, ZeroJetHasZeroMomenta) {
  const Vector z = Vector::Zero(2);
  const SecondOrderState s = legendre_second_order(spline_lagrangian(2), z, z, z, z);
  EXPECT_LE(max_abs(s.p0) + max_abs(s.p1), 0.0);
}

TEST(Legendre, DependsOnVelocityTerms) {
  // L = |qddot|^2/2 + (qdot·qdot) q0 / 2: p1 = qddot, p0 = q0 qdot - q3.
  const auto L = SecondOrderLagrangian::from_kernel(2, [](const auto& q, const auto& qd, const auto& qdd) {
    return 0.5 * qdd.dot(qdd) + 0.5 * qd.dot(qd) * q[0];
  });
  const Vector q = vec({1.5, -1}), qd = vec({0.5, 2}), qdd = vec({-1, 3}), q3 = vec({0.25, 4});
  const SecondOrderState s = legendre_second_order(L, q, qd, qdd, q3);
  EXPECT_LE(max_abs(s.p1 - qdd), 1e-13);
  EXPECT_LE(max_abs(s.p0 - (q[0] * qd - q3)), 1e-13);
}

TEST(Legendre, MixedSecondDerivativesEnterTheTimeDerivative) {
  // L = q0 * qddot0 + qdot1 * qddot1^2 / 2 in dimension 2.
  //   p1 = (q0, qdot1 qddot1),
  //   p0 = (0, qddot1^2/2) - d/dt p1 = (-qdot0, qddot1^2/2 - qddot1^2 - qdot1 q3_1).
  const auto L = SecondOrderLagrangian::from_kernel(2, [](const auto& q, const auto& qd, const auto& qdd) {
    return q[0] * qdd[0] + 0.5 * qd[1] * qdd[1] * qdd[1];
  });
  const Vector q = vec({0.7, 0.1}), qd = vec({-1.2, 0.9}), qdd = vec({0.3, -2}), q3 = vec({5, 1.5});
  const SecondOrderState s = legendre_second_order(L, q, qd, qdd, q3);
  EXPECT_LE(max_abs(s.p1 - vec({0.7, 0.9 * -2})), 1e-13);
  EXPECT_LE(max_abs(s.p0 - vec({1.2, 2.0 - 4.0 - 0.9 * 1.5})), 1e-13);
}

TEST(Legendre, FiniteDifferenceFallbackAgreesWithExactMomenta) {
  auto kernel = [](const auto& q, const auto& qd, const auto& qdd) {
    using std::sin;
    return 0.5 * qdd.dot(qdd) + sin(q[0]) * qd[1] * qdd[0];
  };
  const auto exact = SecondOrderLagrangian::from_kernel(2, kernel);
  const auto fd = SecondOrderLagrangian::from_function(
      2, [kernel](const Vector& q, const Vector& qd, const Vector& qdd) { return kernel(q, qd, qdd); });
  testing::Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector q = rng.vector(2), qd = rng.vector(2), qdd = rng.vector(2), q3 = rng.vector(2);
    const SecondOrderState a = legendre_second_order(exact, q, qd, qdd, q3);
    const SecondOrderState b = legendre_second_order(fd, q, qd, qdd, q3);
    EXPECT_LE(max_abs(a.p0 - b.p0), 1e-6);
    EXPECT_LE(max_abs(a.p1 - b.p1), 1e-6);
  }
}

TEST(Energy, SplineExample) {
  EXPECT_NEAR(lagrangian_energy(spline_lagrangian(1), vec({0}), vec({1}), vec({2}), vec({3})), -1.0, 1e-14);
  const Vector z = Vector::Zero(3);
  EXPECT_EQ(lagrangian_energy(spline_lagrangian(3), z, z, z, z), 0.0);
}

TEST(Energy, EqualsHamiltonianAfterLegendre) {
  // L = |qddot|^2/2 + V(q) and H = |p1|^2/2 + p0·qdot - V(q).
  const double tau = 0.2;
  const auto L = SecondOrderLagrangian::from_kernel(3, [tau](const auto& q, const auto&, const auto& qdd) {
    return 0.5 * qdd.dot(qdd) + tau / (q[0] * q[0] + q[1] * q[1] - 1.0);
  });
  const HamiltonianSystem H = second_order_hamiltonian(3, unit_obstacle(tau));
  testing::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Vector q = rng.vector(3, -3, 3);
    q.head(2) = q.head(2).normalized() * 2.0;
    const Vector qd = rng.vector(3), qdd = rng.vector(3), q3 = rng.vector(3);
    const SecondOrderState s = legendre_second_order(L, q, qd, qdd, q3);
    EXPECT_NEAR(lagrangian_energy(L, q, qd, qdd, q3), H.H(s.m(), s.p()), 1e-12);
  }
}

TEST(SecondOrderState, FlatLayout) {
  const SecondOrderState s{vec({1, 2}), vec({3, 4}), vec({5, 6}), vec({7, 8})};
  EXPECT_LE(max_abs(s.flat() - vec({1, 2, 3, 4, 5, 6, 7, 8})), 0.0);
  const SecondOrderState back = SecondOrderState::from_flat(s.flat(), 2);
  EXPECT_LE(max_abs(back.flat() - s.flat()), 0.0);
  EXPECT_THROW(SecondOrderState::from_flat(vec({1, 2, 3}), 1), DimensionMismatch);
}

}  // namespace
}  // namespace geodisc
