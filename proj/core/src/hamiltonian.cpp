#include "geodisc/hamiltonian.hpp"

#include "geodisc/errors.hpp"

namespace geodisc {

Potential Potential::zero(int n) {
  return {[](const Vector&) { return 0.0; }, [n](const Vector&) -> Vector { return Vector::Zero(n); }};
}

HamiltonianSystem second_order_hamiltonian(int n, const Potential& V) {
  HamiltonianSystem sys;
  sys.dim = 2 * n;
  sys.H = [n, V](const Vector& m, const Vector& p) {
    const Vector p1 = p.tail(n);
    return 0.5 * p1.squaredNorm() + p.head(n).dot(m.tail(n)) - V.value(m.head(n));
  };
  sys.grad_m = [n, V](const Vector& m, const Vector& p) -> Vector {
    return concat(-V.gradient(m.head(n)), p.head(n));
  };
  sys.grad_p = [n](const Vector& m, const Vector& p) -> Vector {
    return concat(m.tail(n), p.tail(n));
  };
  return sys;
}

SecondOrderState SecondOrderState::from_flat(const Vector& z, int n) {
  require_dim(z, 4 * n, "second-order state");
  return {z.segment(0, n), z.segment(n, n), z.segment(2 * n, n), z.segment(3 * n, n)};
}

SecondOrderLagrangian::SecondOrderLagrangian(int n, SmoothMap L) : n_(n), L_(std::move(L)) {
  if (L_.input_dim() != 3 * n || L_.output_dim() != 1) {
    throw DimensionMismatch("second-order Lagrangian must map R^(3n) to R");
  }
}

SecondOrderLagrangian SecondOrderLagrangian::from_function(
    int n, std::function<double(const Vector&, const Vector&, const Vector&)> L) {
  return SecondOrderLagrangian(
      n, SmoothMap::from_function(3 * n, 1, [n, L](const Vector& x) -> Vector {
        return Vector::Constant(1, L(x.segment(0, n), x.segment(n, n), x.segment(2 * n, n)));
      }));
}

double SecondOrderLagrangian::operator()(const Vector& q, const Vector& qdot,
                                         const Vector& qddot) const {
  Vector x(3 * n_);
  x << q, qdot, qddot;
  return L_(x)[0];
}

SecondOrderLagrangian spline_lagrangian(int n) {
  return SecondOrderLagrangian::from_kernel(n, [](const auto&, const auto&, const auto& qddot) {
    return (0.5 * qddot.squaredNorm());
  });
}

namespace {

// Gradient g = dL/dx and its derivative along `direction`, (D^2 L) direction.
void gradient_and_hessian_direction(const SmoothMap& L, const Vector& x, const Vector& direction,
                                    Vector& g, Vector& hd) {
  const Eigen::Index N = x.size();
  g.resize(N);
  hd.resize(N);
  if (L.has_series2()) {
    // Outer variable s along e_i, inner variable t along `direction`:
    // the s t coefficient of L(x + s e_i + t d) is d/dt dL/dx_i.
    for (Eigen::Index i = 0; i < N; ++i) {
      Series2Vector xs(N);
      for (Eigen::Index j = 0; j < N; ++j) {
        Series inner = Series::zero(1);
        inner[0] = x[j];
        inner[1] = direction[j];
        Series2 outer = Series2::zero(1);
        outer[0] = inner;
        outer[1] = Series(i == j ? 1.0 : 0.0);
        xs[j] = outer;
      }
      const Series2 y = L(xs)[0];
      g[i] = y[1][0];
      hd[i] = y[1][1];
    }
    return;
  }
  const VectorFunction grad = [&L](const Vector& z) -> Vector {
    return jacobian_fd(L.as_function(), z).row(0).transpose();
  };
  g = grad(x);
  const double speed = direction.lpNorm<Eigen::Infinity>();
  if (speed == 0.0) {
    hd.setZero();
    return;
  }
  const double eps = 1e-4 * std::max(1.0, x.lpNorm<Eigen::Infinity>()) / speed;
  hd = (grad(x + eps * direction) - grad(x - eps * direction)) / (2.0 * eps);
}

}  // namespace

SecondOrderState legendre_second_order(const SecondOrderLagrangian& L, const Vector& q,
                                       const Vector& qdot, const Vector& qddot, const Vector& q3) {
  const int n = L.dim();
  for (const Vector* v : {&q, &qdot, &qddot, &q3}) require_dim(*v, n, "Legendre jet slot");
  Vector x(3 * n), d(3 * n);
  x << q, qdot, qddot;
  d << qdot, qddot, q3;
  Vector g, hd;
  gradient_and_hessian_direction(L.map(), x, d, g, hd);
  return {q, qdot, Vector(g.segment(n, n) - hd.segment(2 * n, n)), Vector(g.segment(2 * n, n))};
}

double lagrangian_energy(const SecondOrderLagrangian& L, const Vector& q, const Vector& qdot,
                         const Vector& qddot, const Vector& q3) {
  const SecondOrderState s = legendre_second_order(L, q, qdot, qddot, q3);
  return qdot.dot(s.p0) + qddot.dot(s.p1) - L(q, qdot, qddot);
}

}  // namespace geodisc
