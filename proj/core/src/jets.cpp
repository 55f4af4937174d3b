#include "geodisc/jets.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "geodisc/errors.hpp"

namespace geodisc {

double factorial(int r) {
  double out = 1.0;
  for (int i = 2; i <= r; ++i) out *= i;
  return out;
}

namespace {

void require_order(int k) {
  if (k < 0 || k > kMaxTaylorOrder) {
    std::ostringstream os;
    os << "jet order " << k << " outside supported range 0.." << kMaxTaylorOrder;
    throw UnsupportedOrder(os.str());
  }
}

Jet scale_slots(const Jet& j, bool normalize) {
  std::vector<Vector> out;
  out.reserve(j.derivs().size());
  for (int r = 0; r <= j.order(); ++r) {
    out.push_back(normalize ? Vector(j[r] / factorial(r)) : Vector(j[r] * factorial(r)));
  }
  return Jet(std::move(out));
}

}  // namespace

Jet::Jet(std::vector<Vector> derivs) : derivs_(std::move(derivs)) {
  if (derivs_.empty()) throw DimensionMismatch("Jet needs at least the base point");
  require_order(order());
  for (const Vector& d : derivs_) {
    require_dim(d, derivs_.front().size(), "Jet slot");
    require_finite(d, "Jet slot");
  }
}

Jet Jet::zero(int order, int dim) {
  require_order(order);
  return Jet(std::vector<Vector>(static_cast<std::size_t>(order) + 1, Vector::Zero(dim)));
}

Jet Jet::unflatten(const Vector& flat, int order, int dim) {
  require_order(order);
  require_dim(flat, static_cast<Eigen::Index>(order + 1) * dim, "flattened jet");
  std::vector<Vector> slots;
  for (int r = 0; r <= order; ++r) slots.push_back(flat.segment(r * dim, dim));
  return Jet(std::move(slots));
}

Vector Jet::flatten() const {
  Vector out(static_cast<Eigen::Index>(derivs_.size()) * dim());
  for (int r = 0; r <= order(); ++r) out.segment(r * dim(), dim()) = (*this)[r];
  return out;
}

void JetTangent::validate() const {
  if (static_cast<int>(fiber.size()) != base.order() + 1) {
    throw DimensionMismatch("JetTangent fiber order differs from base order");
  }
  for (const Vector& v : fiber) {
    require_dim(v, base.dim(), "JetTangent fiber slot");
    require_finite(v, "JetTangent fiber slot");
  }
}

Jet to_normalized(const Jet& j) { return scale_slots(j, true); }
Jet from_normalized(const Jet& j) { return scale_slots(j, false); }

Curve taylor_curve(const Jet& j) {
  return Curve::from_kernel(j.dim(), [j](auto t) {
    using S = decltype(t);
    VecT<S> out = j[0].template cast<S>();
    S power(1.0);
    for (int r = 1; r <= j.order(); ++r) {
      power = power * t;
      for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += power * (j[r][i] / factorial(r));
    }
    return out;
  });
}

Jet jet_of_curve(const Curve& c, int k, DerivativeBackend backend) {
  require_order(k);
  return Jet(taylor_derivatives(c, 0.0, k, backend));
}

Jet jet_pushforward(const SmoothMap& F, const Jet& j, JetMethod method) {
  require_dim(j[0], F.input_dim(), "jet_pushforward input");
  const int k = j.order();
  if (method == JetMethod::kAuto) {
    method = F.has_series() ? JetMethod::kTaylor : JetMethod::kFiniteDifference;
  }

  switch (method) {
    case JetMethod::kTaylor: {
      if (!F.has_series()) throw EvaluationFailure("Taylor pushforward needs a Taylor-capable map");
      return Jet(push_jet_slots<double>(F, j.derivs()));
    }
    case JetMethod::kFaaDiBruno: {
      if (k > 2) throw UnsupportedOrder("explicit Faa di Bruno pushforward is implemented for k <= 2");
      std::vector<Vector> out{F(j[0])};
      if (k == 0) return Jet(std::move(out));
      const Matrix J = F.jacobian(j[0]);
      out.push_back(J * j[1]);
      if (k == 1) return Jet(std::move(out));

      // D^2F(c', c') is twice the t^2 coefficient of F(c + t c').
      Vector second;
      if (F.has_series()) {
        second = 2.0 * coefficient(F(seed_line(Vector(j[0]), Vector(j[1]), 2)), 2);
      } else {
        const double speed = j[1].lpNorm<Eigen::Infinity>();
        if (speed == 0.0) {
          second = Vector::Zero(F.output_dim());
        } else {
          const double eps = 1e-4 * std::max(1.0, j[0].lpNorm<Eigen::Infinity>()) / speed;
          second = (F(Vector(j[0] + eps * j[1])) - 2.0 * F(j[0]) + F(Vector(j[0] - eps * j[1]))) / (eps * eps);
        }
      }
      out.push_back(second + J * j[2]);
      return Jet(std::move(out));
    }
    case JetMethod::kFiniteDifference: {
      const Curve path = taylor_curve(j);
      const Curve image(F.output_dim(), [F, path](double t) { return F(path(t)); });
      return jet_of_curve(image, k, DerivativeBackend::kFiniteDifference);
    }
    case JetMethod::kAuto:
      break;
  }
  throw EvaluationFailure("unknown jet pushforward method");
}

Jet phi_k(const JetTangent& x) {
  x.validate();
  std::vector<Vector> slots;
  slots.reserve(x.fiber.size());
  for (int r = 0; r <= x.order(); ++r) slots.push_back(concat(x.base[r], x.fiber[static_cast<std::size_t>(r)]));
  return Jet(std::move(slots));
}

JetTangent phi_k_inverse(const Jet& tq_jet) {
  if (tq_jet.dim() % 2 != 0) throw DimensionMismatch("phi_k_inverse needs a TQ-valued jet");
  const int n = tq_jet.dim() / 2;
  std::vector<Vector> base;
  std::vector<Vector> fiber;
  for (int r = 0; r <= tq_jet.order(); ++r) {
    base.push_back(tq_jet[r].head(n));
    fiber.push_back(tq_jet[r].tail(n));
  }
  return JetTangent{Jet(std::move(base)), std::move(fiber)};
}

}  // namespace geodisc
