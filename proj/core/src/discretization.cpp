#include "geodisc/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "geodisc/errors.hpp"

namespace geodisc {

namespace {

constexpr double kUnitTol = 1e-9;
// Below this squared magnitude the trigonometric ratios switch to series.
constexpr double kSeriesBranch = 1e-12;

template <class S>
S dot(const VecT<S>& a, const VecT<S>& b) {
  S acc(0.0);
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
S horner(const S& x, std::initializer_list<double> coeffs) {
  S acc(0.0);
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) acc = acc * x + S(*it);
  return acc;
}

// cos(sqrt(s)), sin(sqrt(s))/sqrt(s) and asin(sqrt(s))/sqrt(s), smooth in s >= 0.
template <class S>
S cos_of_root(const S& s) {
  using std::cos;
  using std::sqrt;
  if (primal(s) < kSeriesBranch) {
    return horner(s, {1.0, -1.0 / 2, 1.0 / 24, -1.0 / 720, 1.0 / 40320});
  }
  return cos(sqrt(s));
}

template <class S>
S sinc_of_root(const S& s) {
  using std::sin;
  using std::sqrt;
  if (primal(s) < kSeriesBranch) {
    return horner(s, {1.0, -1.0 / 6, 1.0 / 120, -1.0 / 5040, 1.0 / 362880});
  }
  const S r = sqrt(s);
  return sin(r) / r;
}

template <class S>
S asinc_of_root(const S& s) {
  using std::asin;
  using std::sqrt;
  if (primal(s) < kSeriesBranch) {
    return horner(s, {1.0, 1.0 / 6, 3.0 / 40, 5.0 / 112, 35.0 / 1152});
  }
  const S r = sqrt(s);
  return asin(r) / r;
}

// SE(2) left Jacobian entries: sin(w)/w, (1 - cos w)/w and (w/2) cot(w/2).
template <class S>
S se2_a(const S& w) {
  using std::sin;
  if (std::abs(primal(w)) < 1e-6) {
    return horner(S(w * w), {1.0, -1.0 / 6, 1.0 / 120, -1.0 / 5040, 1.0 / 362880});
  }
  return sin(w) / w;
}

template <class S>
S se2_b(const S& w) {
  using std::cos;
  if (std::abs(primal(w)) < 1e-6) {
    return w * horner(S(w * w), {1.0 / 2, -1.0 / 24, 1.0 / 720, -1.0 / 40320, 1.0 / 3628800});
  }
  return (S(1.0) - cos(w)) / w;
}

template <class S>
S se2_half_cot(const S& w) {
  using std::cos;
  using std::sin;
  if (std::abs(primal(w)) < 1e-6) {
    return horner(S(w * w), {1.0, -1.0 / 12, -1.0 / 720, -1.0 / 30240, -1.0 / 1209600});
  }
  const S half = w / 2.0;
  return half * cos(half) / sin(half);
}

template <class S>
VecT<S> se2_exp_generic(const S& v1, const S& v2, const S& w) {
  const S a = se2_a(w);
  const S b = se2_b(w);
  VecT<S> out(3);
  out << a * v1 - b * v2, b * v1 + a * v2, w;
  return out;
}

template <class S>
VecT<S> se2_compose_generic(const VecT<S>& g, const VecT<S>& h) {
  using std::cos;
  using std::sin;
  const S c = cos(g[2]);
  const S s = sin(g[2]);
  VecT<S> out(3);
  out << g[0] + c * h[0] - s * h[1], g[1] + s * h[0] + c * h[1], g[2] + h[2];
  return out;
}

std::optional<std::string> check_unit(const Vector& q, const char* what) {
  if (std::abs(q.norm() - 1.0) > kUnitTol) {
    std::ostringstream os;
    os << what << " is not on the unit sphere (|q| = " << q.norm() << ")";
    return os.str();
  }
  return std::nullopt;
}

std::optional<std::string> check_tangent(const Vector& q, const Vector& xi) {
  if (auto bad = check_unit(q, "base point")) return bad;
  if (std::abs(q.dot(xi)) > kUnitTol * std::max(1.0, xi.norm())) {
    std::ostringstream os;
    os << "velocity is not tangent to the sphere (q.xi = " << q.dot(xi) << ")";
    return os.str();
  }
  return std::nullopt;
}

Matrix sphere_tangent_basis(const Vector& q) {
  Eigen::Index axis = 0;
  q.cwiseAbs().minCoeff(&axis);
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[axis] = 1.0;
  const Eigen::Vector3d qq = q.normalized();
  const Eigen::Vector3d u1 = (e - e.dot(qq) * qq).normalized();
  const Eigen::Vector3d u2 = qq.cross(u1);
  Matrix basis(3, 2);
  basis << u1, u2;
  return basis;
}

Matrix identity_frame(int n) { return Matrix::Identity(n, n); }

DiscretizationMap::Parts euclidean_parts(std::string name, int n) {
  DiscretizationMap::Parts parts;
  parts.name = std::move(name);
  parts.dim = n;
  parts.fiber_basis = [n](const Vector&) { return identity_frame(n); };
  parts.trivialization = [n](const Vector&) { return identity_frame(n); };
  return parts;
}

}  // namespace

DiscretizationMap::DiscretizationMap(Parts parts) : parts_(std::move(parts)) {
  if (parts_.dim < 1) throw DimensionMismatch("discretization map dimension must be positive");
  const int n = parts_.dim;
  if (parts_.forward.input_dim() != 2 * n || parts_.forward.output_dim() != 2 * n ||
      parts_.inverse.input_dim() != 2 * n || parts_.inverse.output_dim() != 2 * n) {
    throw DimensionMismatch("discretization map formulas must act on 2n-dimensional coordinates");
  }
  if (!parts_.fiber_basis) parts_.fiber_basis = [n](const Vector&) { return identity_frame(n); };
  if (!parts_.trivialization) {
    parts_.trivialization = [n](const Vector&) { return identity_frame(n); };
  }
}

std::optional<std::string> DiscretizationMap::domain_violation(const Vector& q,
                                                               const Vector& v) const {
  if (q.size() != dim() || v.size() != dim()) return std::string("dimension mismatch");
  if (!q.allFinite() || !v.allFinite()) return std::string("non-finite input");
  return parts_.forward_domain ? parts_.forward_domain(q, v) : std::nullopt;
}

std::optional<std::string> DiscretizationMap::inverse_domain_violation(
    const Vector& q_minus, const Vector& q_plus) const {
  if (q_minus.size() != dim() || q_plus.size() != dim()) return std::string("dimension mismatch");
  if (!q_minus.allFinite() || !q_plus.allFinite()) return std::string("non-finite input");
  return parts_.inverse_domain ? parts_.inverse_domain(q_minus, q_plus) : std::nullopt;
}

PointPair DiscretizationMap::forward(const Vector& q, const Vector& v) const {
  if (auto bad = domain_violation(q, v)) {
    throw DomainViolation(name() + " forward: " + *bad);
  }
  const Vector out = parts_.forward(concat(q, v));
  return {out.head(dim()), out.tail(dim())};
}

TangentPoint DiscretizationMap::inverse(const Vector& q_minus, const Vector& q_plus) const {
  if (auto bad = inverse_domain_violation(q_minus, q_plus)) {
    throw DomainViolation(name() + " inverse: " + *bad);
  }
  const Vector out = parts_.inverse(concat(q_minus, q_plus));
  return {out.head(dim()), out.tail(dim())};
}

Matrix DiscretizationMap::jacobian_forward(const Vector& q, const Vector& v) const {
  return parts_.forward.jacobian(concat(q, v));
}

Matrix DiscretizationMap::fiber_basis(const Vector& q) const { return parts_.fiber_basis(q); }

DiscretizationMap DiscretizationMap::coordinate_form() const {
  if (parts_.from_coordinates.input_dim() == 0) return *this;
  Parts p = parts_;
  p.name = parts_.name + "/coordinates";
  p.forward = compose(parts_.forward, parts_.from_coordinates);
  p.inverse = compose(parts_.to_coordinates, parts_.inverse);
  p.forward_domain = [original = parts_](const Vector& q, const Vector& v) -> std::optional<std::string> {
    if (!original.forward_domain) return std::nullopt;
    const Vector xi = original.from_coordinates(concat(q, v)).tail(q.size());
    return original.forward_domain(q, xi);
  };
  p.fiber_basis = [original = parts_](const Vector& q) -> Matrix {
    return original.trivialization(q) * original.fiber_basis(q);
  };
  const int n = parts_.dim;
  p.trivialization = [n](const Vector&) { return identity_frame(n); };
  p.to_coordinates = SmoothMap();
  p.from_coordinates = SmoothMap();
  return DiscretizationMap(std::move(p));
}
Matrix DiscretizationMap::trivialization(const Vector& q) const {
  return parts_.trivialization(q);
}

DiscretizationMap theta_map(int n, double theta) {
  if (n < 1) throw DimensionMismatch("theta_map: n must be positive");
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainViolation("theta_map: theta must lie in [0, 1]");
  std::ostringstream name;
  name << "theta(" << theta << ")";
  auto parts = euclidean_parts(name.str(), n);
  parts.forward = SmoothMap::from_kernel(2 * n, 2 * n, [n, theta](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    V out(2 * n);
    out.head(n) = x.head(n) - x.tail(n) * theta;
    out.tail(n) = x.head(n) + x.tail(n) * (1.0 - theta);
    return out;
  });
  parts.inverse = SmoothMap::from_kernel(2 * n, 2 * n, [n, theta](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    V out(2 * n);
    out.tail(n) = x.tail(n) - x.head(n);
    out.head(n) = x.head(n) + out.tail(n) * theta;
    return out;
  });
  return DiscretizationMap(std::move(parts));
}

DiscretizationMap midpoint_map(int n) {
  if (n < 1) throw DimensionMismatch("midpoint_map: n must be positive");
  auto parts = euclidean_parts("midpoint", n);
  parts.forward = SmoothMap::from_kernel(2 * n, 2 * n, [n](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    V out(2 * n);
    out.head(n) = x.head(n) - x.tail(n) * 0.5;
    out.tail(n) = x.head(n) + x.tail(n) * 0.5;
    return out;
  });
  parts.inverse = SmoothMap::from_kernel(2 * n, 2 * n, [n](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    V out(2 * n);
    out.head(n) = (x.head(n) + x.tail(n)) * 0.5;
    out.tail(n) = x.tail(n) - x.head(n);
    return out;
  });
  return DiscretizationMap(std::move(parts));
}

DiscretizationMap sphere_initial_point_map() {
  DiscretizationMap::Parts parts;
  parts.name = "sphere-initial-point";
  parts.dim = 3;
  parts.forward = SmoothMap::from_kernel(6, 6, [](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    const V q = x.head(3);
    const V w = q + x.tail(3);
    using std::sqrt;
    const auto norm = sqrt(dot<typename V::Scalar>(w, w));
    V out(6);
    out.head(3) = q;
    out.tail(3) = w / norm;
    return out;
  });
  parts.inverse = SmoothMap::from_kernel(6, 6, [](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    const V qm = x.head(3);
    const V qp = x.tail(3);
    const auto c = dot<typename V::Scalar>(qm, qp);
    V out(6);
    out.head(3) = qm;
    out.tail(3) = qp / c - qm;
    return out;
  });
  parts.forward_domain = [](const Vector& q, const Vector& xi) -> std::optional<std::string> {
    if (auto bad = check_tangent(q, xi)) return bad;
    if ((q + xi).norm() <= 0.0) return std::string("q + xi vanishes");
    return std::nullopt;
  };
  parts.inverse_domain = [](const Vector& qm, const Vector& qp) -> std::optional<std::string> {
    if (auto bad = check_unit(qm, "first point")) return bad;
    if (auto bad = check_unit(qp, "second point")) return bad;
    if (qm.dot(qp) <= 0.0) return std::string("points are not in the same open hemisphere");
    return std::nullopt;
  };
  parts.fiber_basis = sphere_tangent_basis;
  return DiscretizationMap(std::move(parts));
}

DiscretizationMap sphere_geodesic_midpoint_map() {
  DiscretizationMap::Parts parts;
  parts.name = "sphere-geodesic-midpoint";
  parts.dim = 3;
  parts.forward = SmoothMap::from_kernel(6, 6, [](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    using S = typename V::Scalar;
    const V q = x.head(3);
    const V half = x.tail(3) * 0.5;
    const S s = dot<S>(half, half);
    const S c = cos_of_root(s);
    const S k = sinc_of_root(s);
    V out(6);
    out.head(3) = q * c - half * k;
    out.tail(3) = q * c + half * k;
    return out;
  });
  parts.inverse = SmoothMap::from_kernel(6, 6, [](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    using S = typename V::Scalar;
    using std::sqrt;
    const V qm = x.head(3);
    const V qp = x.tail(3);
    const V sum = qm + qp;
    const V diff = qp - qm;
    // |q+ - q-| = 2 sin(|xi|/2) and xi is parallel to q+ - q-.
    const S s = dot<S>(diff, diff) * 0.25;
    V out(6);
    out.head(3) = sum / sqrt(dot<S>(sum, sum));
    out.tail(3) = diff * asinc_of_root(s);
    return out;
  });
  parts.forward_domain = [](const Vector& q, const Vector& xi) -> std::optional<std::string> {
    if (auto bad = check_tangent(q, xi)) return bad;
    if (xi.norm() / 2.0 >= std::numbers::pi) return std::string("|xi|/2 must be below pi");
    return std::nullopt;
  };
  parts.inverse_domain = [](const Vector& qm, const Vector& qp) -> std::optional<std::string> {
    if (auto bad = check_unit(qm, "first point")) return bad;
    if (auto bad = check_unit(qp, "second point")) return bad;
    if (qm.dot(qp) <= -1.0 + 1e-12) return std::string("points are antipodal");
    return std::nullopt;
  };
  parts.fiber_basis = sphere_tangent_basis;
  return DiscretizationMap(std::move(parts));
}

DiscretizationMap se2_exp_map() {
  DiscretizationMap::Parts parts;
  parts.name = "se2-exp";
  parts.dim = 3;
  parts.forward = SmoothMap::from_kernel(6, 6, [](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    using S = typename V::Scalar;
    const V g = x.head(3);
    const S v1 = x[3] * 0.5;
    const S v2 = x[4] * 0.5;
    const S w = x[5] * 0.5;
    V out(6);
    out.head(3) = se2_compose_generic<S>(g, se2_exp_generic<S>(-v1, -v2, -w));
    out.tail(3) = se2_compose_generic<S>(g, se2_exp_generic<S>(v1, v2, w));
    return out;
  });
  parts.inverse = SmoothMap::from_kernel(6, 6, [](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    using S = typename V::Scalar;
    using std::cos;
    using std::sin;
    const V gm = x.head(3);
    const V gp = x.tail(3);
    // xi = log(gm^-1 gp); g = gm exp(xi / 2).
    const S w = gp[2] - gm[2];
    const S c = cos(gm[2]);
    const S s = sin(gm[2]);
    const S dx = gp[0] - gm[0];
    const S dy = gp[1] - gm[1];
    const S tx = c * dx + s * dy;
    const S ty = -s * dx + c * dy;
    const S a = se2_half_cot(w);
    const S b = w * 0.5;
    const S v1 = a * tx + b * ty;
    const S v2 = -b * tx + a * ty;
    V out(6);
    out.head(3) = se2_compose_generic<S>(gm, se2_exp_generic<S>(v1 * 0.5, v2 * 0.5, w * 0.5));
    out[3] = v1;
    out[4] = v2;
    out[5] = w;
    return out;
  });
  parts.inverse_domain = [](const Vector& gm, const Vector& gp) -> std::optional<std::string> {
    const double w = gp[2] - gm[2];
    if (!(std::abs(w) < std::numbers::pi)) {
      return std::string("relative rotation angle outside (-pi, pi)");
    }
    return std::nullopt;
  };
  parts.fiber_basis = [](const Vector&) { return identity_frame(3); };
  parts.trivialization = [](const Vector& g) {
    Matrix T = Matrix::Identity(3, 3);
    T.topLeftCorner(2, 2) = Eigen::Rotation2Dd(g[2]).toRotationMatrix();
    return T;
  };
  // Rotate the translational part by +theta (to coordinates) or -theta.
  auto rotate_fiber = [](double sign) {
    return SmoothMap::from_kernel(6, 6, [sign](const auto& x) {
      using V = std::decay_t<decltype(x)>;
      using S = typename V::Scalar;
      using std::cos;
      using std::sin;
      const S c = cos(x[2]);
      const S s = sin(x[2]) * sign;
      V out = x;
      out[3] = c * x[3] - s * x[4];
      out[4] = s * x[3] + c * x[4];
      return out;
    });
  };
  parts.to_coordinates = rotate_fiber(1.0);
  parts.from_coordinates = rotate_fiber(-1.0);
  return DiscretizationMap(std::move(parts));
}

Vector sphere_exp(const Vector& q, const Vector& xi) {
  const double s = xi.squaredNorm();
  return q * cos_of_root(s) + xi * sinc_of_root(s);
}

Vector se2_exp(const Vector& xi) {
  require_dim(xi, 3, "se2_exp argument");
  return se2_exp_generic<double>(xi[0], xi[1], xi[2]);
}

Vector se2_compose(const Vector& g, const Vector& h) {
  require_dim(g, 3, "se2_compose lhs");
  require_dim(h, 3, "se2_compose rhs");
  return se2_compose_generic<double>(g, h);
}

bool AxiomReport::passed() const {
  return std::all_of(samples.begin(), samples.end(), [](const AxiomSample& s) { return s.passed; });
}

double AxiomReport::max_defect() const {
  double out = 0.0;
  for (const AxiomSample& s : samples) {
    out = std::max({out, s.zero_section_defect, s.identity_defect});
  }
  return out;
}

AxiomReport verify_discretization_axioms(const DiscretizationMap& map,
                                         const std::vector<Vector>& base_points, double tol) {
  AxiomReport report;
  report.tolerance = tol;
  const int n = map.dim();
  const SmoothMap& forward = map.forward_map();

  for (const Vector& q : base_points) {
    AxiomSample sample;
    sample.point = q;

    const Vector at_zero = forward(concat(q, Vector::Zero(n)));
    sample.zero_section_defect =
        std::max((at_zero.head(n) - q).lpNorm<Eigen::Infinity>(),
                 (at_zero.tail(n) - q).lpNorm<Eigen::Infinity>());

    const Matrix basis = map.fiber_basis(q);
    auto difference = [&](const Vector& s) -> Vector {
      const Vector out = forward(concat(q, basis * s));
      return out.tail(n) - out.head(n);
    };
    const Matrix observed = jacobian_fd(difference, Vector::Zero(basis.cols()));
    const Matrix expected = map.trivialization(q) * basis;
    sample.identity_defect = (observed - expected).lpNorm<Eigen::Infinity>();

    sample.passed = sample.zero_section_defect <= tol && sample.identity_defect <= tol;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

}  // namespace geodisc
