#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "geodisc/errors.hpp"
#include "geodisc/jets.hpp"
#include "test_util.hpp"

namespace geodisc {
namespace {

using testing::max_abs;
using testing::vec;

double jet_distance(const Jet& a, const Jet& b) {
  EXPECT_EQ(a.order(), b.order());
  EXPECT_EQ(a.dim(), b.dim());
  return max_abs(a.flatten() - b.flatten());
}

SmoothMap square_map() {
  return SmoothMap::from_kernel(1, 1, [](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    return V(x.cwiseProduct(x));
  });
}

// Polynomial maps R^2 -> R^2 for the chain rule.
SmoothMap poly_f() {
  return SmoothMap::from_kernel(2, 2, [](const auto& x) {
    std::decay_t<decltype(x)> y(2);
    y[0] = x[0] * x[1] + 2.0 * x[0];
    y[1] = x[1] * x[1] * x[1] - x[0];
    return y;
  });
}

SmoothMap poly_g() {
  return SmoothMap::from_kernel(2, 2, [](const auto& x) {
    std::decay_t<decltype(x)> y(2);
    y[0] = x[0] * x[0] - 3.0 * x[1];
    y[1] = x[0] * x[1] * x[1] + 1.0;
    return y;
  });
}

SmoothMap smooth_map() {
  return SmoothMap::from_kernel(2, 2, [](const auto& x) {
    using std::cos;
    using std::exp;
    using std::sin;
    std::decay_t<decltype(x)> y(2);
    y[0] = sin(x[0]) * exp(x[1]);
    y[1] = cos(x[0] * x[1]) + x[1] * x[1];
    return y;
  });
}

TEST(Jet, NormalizedCoordinates) {
  const Jet raw({vec({1}), vec({2}), vec({4})});
  const Jet normalized = to_normalized(raw);
  EXPECT_LE(max_abs(normalized.flatten() - vec({1, 2, 2})), 0.0);
  EXPECT_LE(jet_distance(from_normalized(normalized), raw), 0.0);
}

TEST(Jet, NormalizedRoundTripAtOrderFour) {
  testing::Rng rng(3);
  std::vector<Vector> slots;
  for (int r = 0; r <= 4; ++r) slots.push_back(rng.vector(3));
  const Jet j(slots);
  EXPECT_LE(jet_distance(from_normalized(to_normalized(j)), j), 1e-15);
}

TEST(Jet, ConstructionValidates) {
  EXPECT_THROW(Jet({vec({1, 2}), vec({1})}), DimensionMismatch);
  EXPECT_THROW(Jet({vec({1}), vec({NAN})}), DomainViolation);
  std::vector<Vector> six(6, vec({0}));
  EXPECT_THROW(Jet{six}, UnsupportedOrder);
}

TEST(Jet, FlattenRoundTrip) {
  const Jet j({vec({1, 2}), vec({3, 4}), vec({5, 6})});
  EXPECT_LE(max_abs(j.flatten() - vec({1, 2, 3, 4, 5, 6})), 0.0);
  EXPECT_LE(jet_distance(Jet::unflatten(j.flatten(), 2, 2), j), 0.0);
}

TEST(JetPushforward, SquareOfUnitSpeedJet) {
  const Jet j({vec({1}), vec({1}), vec({0})});
  for (JetMethod m : {JetMethod::kAuto, JetMethod::kTaylor, JetMethod::kFaaDiBruno}) {
    EXPECT_LE(jet_distance(jet_pushforward(square_map(), j, m), Jet({vec({1}), vec({2}), vec({2})})),
              1e-14);
  }
  const Jet fd = jet_pushforward(square_map(), j, JetMethod::kFiniteDifference);
  EXPECT_LE(jet_distance(fd, Jet({vec({1}), vec({2}), vec({2})})), 1e-6);
}

TEST(JetPushforward, LinearMapActsOnEverySlot) {
  Matrix A(2, 3);
  A << 1, -2, 0.5, 3, 0, 1;
  const SmoothMap F = SmoothMap::from_kernel(3, 2, [A](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    return VecT<S>(A.cast<S>() * x);
  });
  testing::Rng rng(4);
  const Jet j({rng.vector(3), rng.vector(3), rng.vector(3), rng.vector(3)});
  const Jet y = jet_pushforward(F, j);
  for (int r = 0; r <= 3; ++r) EXPECT_LE(max_abs(y[r] - A * j[r]), 1e-14) << r;
}

TEST(JetPushforward, IdentityLeavesJetUnchanged) {
  const SmoothMap id = SmoothMap::from_kernel(2, 2, [](const auto& x) { return x; });
  const Jet j({vec({1, 2}), vec({3, 4}), vec({5, 6}), vec({7, 8}), vec({9, 10})});
  EXPECT_LE(jet_distance(jet_pushforward(id, j), j), 0.0);
}

TEST(JetPushforward, FaaDiBrunoAboveOrderTwoIsUnsupported) {
  const Jet j({vec({1}), vec({1}), vec({0}), vec({0})});
  EXPECT_THROW(jet_pushforward(square_map(), j, JetMethod::kFaaDiBruno), UnsupportedOrder);
}

TEST(JetPushforward, DimensionIsChecked) {
  const Jet j({vec({1, 2}), vec({1, 0})});
  EXPECT_THROW(jet_pushforward(square_map(), j), DimensionMismatch);
}

TEST(JetPushforward, ChainRuleForPolynomials) {
  const SmoothMap F = poly_f();
  const SmoothMap G = poly_g();
  const SmoothMap GF = compose(G, F);
  testing::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    for (int k = 0; k <= 4; ++k) {
      std::vector<Vector> slots;
      for (int r = 0; r <= k; ++r) slots.push_back(rng.vector(2));
      const Jet j(slots);
      const Jet lhs = jet_pushforward(GF, j);
      const Jet rhs = jet_pushforward(G, jet_pushforward(F, j));
      EXPECT_LE(jet_distance(lhs, rhs), 1e-9) << "k=" << k;
    }
  }
}

TEST(JetPushforward, FaaDiBrunoAgreesWithTaylor) {
  testing::Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Jet j({rng.vector(2), rng.vector(2), rng.vector(2)});
    const Jet a = jet_pushforward(smooth_map(), j, JetMethod::kTaylor);
    const Jet b = jet_pushforward(smooth_map(), j, JetMethod::kFaaDiBruno);
    EXPECT_LE(jet_distance(a, b), 1e-7);
  }
}

TEST(JetPushforward, AgreesWithJetOfComposedCurve) {
  const SmoothMap F = smooth_map();
  testing::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % 4;
    const Vector a = rng.vector(2), b = rng.vector(2), c = rng.vector(2);
    const Curve curve = Curve::from_kernel(2, [a, b, c](auto t) {
      using std::sin;
      using S = decltype(t);
      VecT<S> out(2);
      for (int i = 0; i < 2; ++i) out[i] = a[i] + b[i] * sin(t) + c[i] * t * t;
      return out;
    });
    const Curve composed = Curve::from_kernel(2, [F, curve](auto t) { return F(curve(t)); });
    const Jet lhs = jet_pushforward(F, jet_of_curve(curve, k));
    const Jet rhs = jet_of_curve(composed, k);
    EXPECT_LE(jet_distance(lhs, rhs), 1e-7) << "trial " << trial;
  }
}

TEST(PhiK, ReindexesSecondOrder) {
  const Vector q = vec({1}), qd = vec({2}), qdd = vec({3});
  const Vector v = vec({4}), vd = vec({5}), vdd = vec({6});
  const Jet out = phi_k(JetTangent{Jet({q, qd, qdd}), {v, vd, vdd}});
  EXPECT_LE(max_abs(out.flatten() - vec({1, 4, 2, 5, 3, 6})), 0.0);
}

TEST(PhiK, OrderZeroStacksPointAndVelocity) {
  const Jet out = phi_k(JetTangent{Jet({vec({1, 2})}), {vec({3, 4})}});
  EXPECT_EQ(out.order(), 0);
  EXPECT_LE(max_abs(out[0] - vec({1, 2, 3, 4})), 0.0);
}

TEST(PhiK, IsAPermutationAndRoundTrips) {
  const int k = 3, n = 2, size = 2 * (k + 1) * n;
  Matrix P(size, size);
  for (int col = 0; col < size; ++col) {
    Vector e = Vector::Zero(size);
    e[col] = 1.0;
    JetTangent x{Jet::unflatten(e.head(size / 2), k, n), {}};
    const Jet fiber = Jet::unflatten(e.tail(size / 2), k, n);
    x.fiber = fiber.derivs();
    P.col(col) = phi_k(x).flatten();
    const JetTangent back = phi_k_inverse(phi_k(x));
    EXPECT_LE(jet_distance(back.base, x.base), 0.0);
    for (int r = 0; r <= k; ++r) EXPECT_LE(max_abs(back.fiber[r] - x.fiber[r]), 0.0);
  }
  EXPECT_TRUE((P.array() == 0.0 || P.array() == 1.0).all());
  EXPECT_LE(max_abs(P.rowwise().sum() - Vector::Ones(size)), 0.0);
  EXPECT_LE(max_abs(P.colwise().sum().transpose() - Vector::Ones(size)), 0.0);
}

TEST(PhiK, MismatchedFiberIsRejected) {
  EXPECT_THROW(phi_k(JetTangent{Jet({vec({1}), vec({2})}), {vec({3})}}), DimensionMismatch);
}

TEST(JetOfCurve, ParabolaAtZero) {
  const Curve c = Curve::from_kernel(2, [](auto t) {
    VecT<decltype(t)> out(2);
    out << t, t * t;
    return out;
  });
  const Jet j = jet_of_curve(c, 2);
  EXPECT_LE(jet_distance(j, Jet({vec({0, 0}), vec({1, 0}), vec({0, 2})})), 1e-15);
}

TEST(JetOfCurve, ConstantCurveHasZeroDerivatives) {
  const Curve c(3, [](double) { return vec({1, -2, 5}); });
  const Jet j = jet_of_curve(c, 3);
  EXPECT_LE(max_abs(j[0] - vec({1, -2, 5})), 0.0);
  for (int r = 1; r <= 3; ++r) EXPECT_LE(max_abs(j[r]), 1e-9) << r;
}

TEST(TaylorCurve, RealizesItsJet) {
  const Jet j({vec({1, 2}), vec({3, 4}), vec({5, 6}), vec({7, 8})});
  EXPECT_LE(jet_distance(jet_of_curve(taylor_curve(j), 3), j), 1e-13);
}

}  // namespace
}  // namespace geodisc
