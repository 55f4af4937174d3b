#include "geodisc/reference_maps.hpp"

#include <cmath>

namespace geodisc::reference {

CotangentLiftedMap midpoint_cotangent(int n) {
  auto forward = [n](const Vector& x) -> Vector {
    const Vector q = x.segment(0, n), p = x.segment(n, n);
    const Vector qdot = x.segment(2 * n, n), pdot = x.segment(3 * n, n);
    Vector y(4 * n);
    y << q - 0.5 * qdot, p - 0.5 * pdot, q + 0.5 * qdot, p + 0.5 * pdot;
    return y;
  };
  auto inverse = [n](const Vector& y) -> Vector {
    const Vector q0 = y.segment(0, n), p0 = y.segment(n, n);
    const Vector q1 = y.segment(2 * n, n), p1 = y.segment(3 * n, n);
    Vector x(4 * n);
    x << 0.5 * (q0 + q1), 0.5 * (p0 + p1), q1 - q0, p1 - p0;
    return x;
  };
  return CotangentLiftedMap("midpoint (closed form)", n, forward, inverse);
}

CotangentLiftedMap lifted_midpoint_on_tstar_tq(int n) {
  // Input blocks: q, qdot, p0, p1, qdot', qddot, p0dot, p1dot.
  auto forward = [n](const Vector& x) -> Vector {
    auto b = [&](int i) { return x.segment(i * n, n); };
    Vector y(8 * n);
    y << b(0) - 0.5 * b(4), b(1) - 0.5 * b(5), b(2) - 0.5 * b(6), b(3) - 0.5 * b(7),
        b(0) + 0.5 * b(4), b(1) + 0.5 * b(5), b(2) + 0.5 * b(6), b(3) + 0.5 * b(7);
    return y;
  };
  auto inverse = [n](const Vector& y) -> Vector {
    auto b = [&](int i) { return y.segment(i * n, n); };
    Vector x(8 * n);
    x << 0.5 * (b(0) + b(4)), 0.5 * (b(1) + b(5)), 0.5 * (b(2) + b(6)), 0.5 * (b(3) + b(7)),
        b(4) - b(0), b(5) - b(1), b(6) - b(2), b(7) - b(3);
    return x;
  };
  return CotangentLiftedMap("lifted midpoint (closed form)", 2 * n, forward, inverse);
}

Vector midpoint_second_lift(const Vector& x, int n) {
  const Vector base = x.head(3 * n);
  const Vector fiber = x.tail(3 * n);
  return concat(base - 0.5 * fiber, base + 0.5 * fiber);
}

std::pair<Jet, Jet> sphere_initial_point_second_lift(const Vector& q, const Vector& xi,
                                                      const Vector& qdot, const Vector& xidot,
                                                      const Vector& qddot, const Vector& xiddot,
                                                      bool as_printed) {
  const Vector w = q + xi;
  const double N = w.norm();
  const double a = xi.dot(xidot);
  const Vector second_first = (qdot + xidot) / N - a * w / std::pow(N, 3);
  const double last = as_printed ? 3.0 * a : 3.0 * a * a;
  const Vector second_second = (qddot + xiddot) / N -
                               (2.0 * a * (qdot + xidot) + (xidot.dot(xidot) + xi.dot(xiddot)) * w) /
                                   std::pow(N, 3) +
                               last * w / std::pow(N, 5);
  return {Jet({q, qdot, qddot}), Jet({Vector(w / N), second_first, second_second})};
}

}  // namespace geodisc::reference
