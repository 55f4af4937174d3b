#include "geodisc/lifts.hpp"

#include <algorithm>
#include <sstream>

#include "geodisc/errors.hpp"

namespace geodisc {

namespace {

// Flattened lift: x = (q_0..q_k, v_0..v_k) -> (a_0..a_k, b_0..b_k) where
// (a_r, b_r) is slot r of the jet of R_d along the TQ curve with slots (q_r, v_r).
template <class S>
VecT<S> lifted_flat(const SmoothMap& base, int n, int k, const VecT<S>& x) {
  const int N = (k + 1) * n;
  std::vector<VecT<S>> slots;
  slots.reserve(static_cast<std::size_t>(k) + 1);
  for (int r = 0; r <= k; ++r) {
    VecT<S> slot(2 * n);
    slot.head(n) = x.segment(r * n, n);
    slot.tail(n) = x.segment(N + r * n, n);
    slots.push_back(std::move(slot));
  }
  const std::vector<VecT<S>> pushed = push_jet_slots<S>(base, slots);
  VecT<S> y(2 * N);
  for (int r = 0; r <= k; ++r) {
    y.segment(r * n, n) = pushed[static_cast<std::size_t>(r)].head(n);
    y.segment(N + r * n, n) = pushed[static_cast<std::size_t>(r)].tail(n);
  }
  return y;
}

Jet slice(const Jet& j, int offset, int n) {
  std::vector<Vector> out;
  for (int r = 0; r <= j.order(); ++r) out.push_back(j[r].segment(offset, n));
  return Jet(std::move(out));
}

}  // namespace

TangentPair TangentLift::forward(const Vector& q, const Vector& v, const Vector& qdot,
                                 const Vector& vdot) const {
  const int n = base_.dim();
  const PointPair points = base_.forward(q, v);
  const Vector velocities = base_.jacobian_forward(q, v) * concat(qdot, vdot);
  return {{points.minus, velocities.head(n)}, {points.plus, velocities.tail(n)}};
}

TangentLift tangent_lift(const DiscretizationMap& base) { return TangentLift(base); }

HigherOrderDiscretizationMap::HigherOrderDiscretizationMap(DiscretizationMap base, int order,
                                                           JetMethod method)
    : base_(base.coordinate_form()), order_(order), method_(method) {
  if (order_ < 0 || order_ > kMaxTaylorOrder) {
    std::ostringstream os;
    os << "higher_order_lift: order " << order_ << " outside 0.." << kMaxTaylorOrder;
    throw UnsupportedOrder(os.str());
  }
}

std::pair<Jet, Jet> HigherOrderDiscretizationMap::forward(const JetTangent& x) const {
  x.validate();
  if (x.order() != order_) throw DimensionMismatch("higher-order lift: jet order mismatch");
  require_dim(x.base[0], base_.dim(), "higher-order lift base point");
  if (auto bad = base_.domain_violation(x.base[0], x.fiber[0])) {
    throw DomainViolation(base_.name() + " lift forward: " + *bad);
  }
  const Jet image = jet_pushforward(base_.forward_map(), phi_k(x), method_);
  const int n = base_.dim();
  return {slice(image, 0, n), slice(image, n, n)};
}

JetTangent HigherOrderDiscretizationMap::inverse(const Jet& minus, const Jet& plus) const {
  if (minus.order() != order_ || plus.order() != order_) {
    throw DimensionMismatch("higher-order lift inverse: jet order mismatch");
  }
  if (auto bad = base_.inverse_domain_violation(minus[0], plus[0])) {
    throw DomainViolation(base_.name() + " lift inverse: " + *bad);
  }
  std::vector<Vector> slots;
  for (int r = 0; r <= order_; ++r) slots.push_back(concat(minus[r], plus[r]));
  return phi_k_inverse(jet_pushforward(base_.inverse_map(), Jet(std::move(slots)), method_));
}

DiscretizationMap HigherOrderDiscretizationMap::as_map() const {
  const int n = base_.dim();
  const int k = order_;
  const int N = (k + 1) * n;
  const HigherOrderDiscretizationMap self = *this;
  const bool taylor = method_ == JetMethod::kTaylor ||
                      (method_ == JetMethod::kAuto && base_.forward_map().has_series());

  auto flat_forward = [self, n, k, N](const Vector& x) -> Vector {
    std::vector<Vector> fiber;
    for (int r = 0; r <= k; ++r) fiber.push_back(x.segment(N + r * n, n));
    const auto [minus, plus] =
        self.forward(JetTangent{Jet::unflatten(x.head(N), k, n), std::move(fiber)});
    return concat(minus.flatten(), plus.flatten());
  };
  auto flat_inverse = [self, n, k, N](const Vector& y) -> Vector {
    const JetTangent x =
        self.inverse(Jet::unflatten(y.head(N), k, n), Jet::unflatten(y.tail(N), k, n));
    Vector fiber(N);
    for (int r = 0; r <= k; ++r) fiber.segment(r * n, n) = x.fiber[static_cast<std::size_t>(r)];
    return concat(x.base.flatten(), fiber);
  };

  SmoothMap::EvalT<Series> forward_series;
  SmoothMap::EvalT<Series> inverse_series;
  const SmoothMap& fwd = base_.forward_map();
  const SmoothMap& inv = base_.inverse_map();
  if (taylor && fwd.has_series2()) {
    forward_series = [fwd, n, k](const SeriesVector& x) { return lifted_flat<Series>(fwd, n, k, x); };
  }
  if (taylor && inv.has_series2()) {
    inverse_series = [inv, n, k](const SeriesVector& y) { return lifted_flat<Series>(inv, n, k, y); };
  }

  DiscretizationMap::Parts parts;
  std::ostringstream name;
  name << base_.name() << "^(" << k << ")";
  parts.name = name.str();
  parts.dim = N;
  parts.forward = SmoothMap(2 * N, 2 * N, flat_forward, std::move(forward_series));
  parts.inverse = SmoothMap(2 * N, 2 * N, flat_inverse, std::move(inverse_series));
  const DiscretizationMap base = base_;
  parts.forward_domain = [base, n](const Vector& m, const Vector& mdot) {
    return base.domain_violation(m.head(n), mdot.head(n));
  };
  parts.inverse_domain = [base, n](const Vector& m0, const Vector& m1) {
    return base.inverse_domain_violation(m0.head(n), m1.head(n));
  };
  return DiscretizationMap(std::move(parts));
}

HigherOrderDiscretizationMap higher_order_lift(const DiscretizationMap& base, int order,
                                               JetMethod method) {
  return HigherOrderDiscretizationMap(base, order, method);
}

CotangentLiftedMap::CotangentLiftedMap(std::string name, int base_dim, FlatMap forward,
                                       FlatMap inverse)
    : name_(std::move(name)),
      base_dim_(base_dim),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)) {}

Vector CotangentLiftedMap::forward_flat(const Vector& x) const {
  require_dim(x, 4 * base_dim_, "cotangent lift input");
  return forward_(x);
}

Vector CotangentLiftedMap::inverse_flat(const Vector& y) const {
  require_dim(y, 4 * base_dim_, "cotangent lift inverse input");
  return inverse_(y);
}

CotangentPair CotangentLiftedMap::forward(const Vector& m, const Vector& p, const Vector& mdot,
                                          const Vector& pdot) const {
  const int d = base_dim_;
  Vector x(4 * d);
  x << m, p, mdot, pdot;
  const Vector y = forward_flat(x);
  return {y.segment(0, d), y.segment(d, d), y.segment(2 * d, d), y.segment(3 * d, d)};
}

CotangentTangent CotangentLiftedMap::inverse(const Vector& z0, const Vector& z1) const {
  const int d = base_dim_;
  const Vector x = inverse_flat(concat(z0, z1));
  return {x.segment(0, d), x.segment(d, d), x.segment(2 * d, d), x.segment(3 * d, d)};
}

DiscretizationMap CotangentLiftedMap::as_map() const {
  DiscretizationMap::Parts parts;
  parts.name = "T*" + name_;
  parts.dim = 2 * base_dim_;
  parts.forward = SmoothMap::from_function(4 * base_dim_, 4 * base_dim_, forward_);
  parts.inverse = SmoothMap::from_function(4 * base_dim_, 4 * base_dim_, inverse_);
  return DiscretizationMap(std::move(parts));
}

CotangentLiftedMap cotangent_lift(const DiscretizationMap& original) {
  const DiscretizationMap base = original.coordinate_form();
  const int d = base.dim();
  auto forward = [base, d](const Vector& x) -> Vector {
    const Vector m = x.segment(0, d);
    const Vector p = x.segment(d, d);
    const Vector mdot = x.segment(2 * d, d);
    const Vector pdot = x.segment(3 * d, d);
    const PointPair points = base.forward(m, mdot);
    const Matrix J = base.jacobian_forward(m, mdot);
    // Row covector (pdot, p) times J^-1, i.e. J^T y = (pdot, p)^T.
    const Vector covector = solve_dense(J.transpose(), concat(pdot, p));
    Vector y(4 * d);
    y << points.minus, -covector.head(d), points.plus, covector.tail(d);
    return y;
  };
  auto inverse = [base, d](const Vector& y) -> Vector {
    const TangentPoint tp = base.inverse(y.segment(0, d), y.segment(2 * d, d));
    const Matrix J = base.jacobian_forward(tp.point, tp.velocity);
    const Vector row = J.transpose() * concat(-y.segment(d, d), y.segment(3 * d, d));
    Vector x(4 * d);
    x << tp.point, row.tail(d), tp.velocity, row.head(d);
    return x;
  };
  return CotangentLiftedMap(original.name(), d, forward, inverse);
}

CotangentLiftedMap lifted_cotangent_map(const DiscretizationMap& base) {
  return cotangent_lift(higher_order_lift(base, 1, JetMethod::kTaylor).as_map());
}

double SymplecticReport::max_defect() const {
  double out = 0.0;
  for (const SymplecticSample& s : samples) out = std::max(out, s.defect);
  return out;
}

Matrix canonical_form(int n) {
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n) = Matrix::Identity(n, n);
  w.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return w;
}

Matrix tangent_symplectic_form(int m) {
  // Coordinates (m, p, mdot, pdot) occupy blocks 0, 1, 2, 3.
  Matrix W = Matrix::Zero(4 * m, 4 * m);
  const Matrix I = Matrix::Identity(m, m);
  W.block(0, 3 * m, m, m) = I;   // dm ∧ dpdot
  W.block(3 * m, 0, m, m) = -I;
  W.block(2 * m, m, m, m) = I;   // dmdot ∧ dp
  W.block(m, 2 * m, m, m) = -I;
  return W;
}

Matrix product_symplectic_form(int m) {
  Matrix O = Matrix::Zero(4 * m, 4 * m);
  O.topLeftCorner(2 * m, 2 * m) = -canonical_form(m);
  O.bottomRightCorner(2 * m, 2 * m) = canonical_form(m);
  return O;
}

SymplecticReport check_symplectomorphism(const VectorFunction& forward_flat, int base_dim,
                                         const std::vector<Vector>& samples, double tol) {
  SymplecticReport report;
  report.tolerance = tol;
  const Matrix W = tangent_symplectic_form(base_dim);
  const Matrix O = product_symplectic_form(base_dim);
  for (const Vector& x : samples) {
    require_dim(x, 4 * base_dim, "symplectomorphism sample");
    const Matrix S = jacobian_fd(forward_flat, x);
    report.samples.push_back({x, (S.transpose() * O * S - W).lpNorm<Eigen::Infinity>()});
  }
  return report;
}

SymplecticReport check_symplectomorphism(const CotangentLiftedMap& map,
                                         const std::vector<Vector>& samples, double tol) {
  return check_symplectomorphism([&map](const Vector& x) { return map.forward_flat(x); },
                                 map.base_dim(), samples, tol);
}

}  // namespace geodisc
