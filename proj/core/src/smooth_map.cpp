#include "geodisc/smooth_map.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "geodisc/errors.hpp"

namespace geodisc {

SmoothMap::SmoothMap(int input_dim, int output_dim, EvalT<double> eval,
                     EvalT<Series> eval_series, EvalT<Series2> eval_series2)
    : input_dim_(input_dim),
      output_dim_(output_dim),
      eval_(std::move(eval)),
      eval_series_(std::move(eval_series)),
      eval_series2_(std::move(eval_series2)) {}

SmoothMap SmoothMap::from_function(int input_dim, int output_dim, EvalT<double> f) {
  return SmoothMap(input_dim, output_dim, std::move(f));
}

Vector SmoothMap::operator()(const Vector& x) const {
  require_dim(x, input_dim_, "SmoothMap input");
  return eval_(x);
}

SeriesVector SmoothMap::operator()(const SeriesVector& x) const {
  if (!eval_series_) throw EvaluationFailure("map has no Taylor evaluation");
  if (x.size() != input_dim_) throw DimensionMismatch("SmoothMap series input");
  return eval_series_(x);
}

Series2Vector SmoothMap::operator()(const Series2Vector& x) const {
  if (!eval_series2_) throw EvaluationFailure("map has no nested Taylor evaluation");
  if (x.size() != input_dim_) throw DimensionMismatch("SmoothMap nested series input");
  return eval_series2_(x);
}

Matrix SmoothMap::jacobian(const Vector& x) const {
  if (!has_series()) return jacobian_fd(x);
  require_dim(x, input_dim_, "SmoothMap input");
  Matrix J(output_dim_, input_dim_);
  Vector e = Vector::Zero(input_dim_);
  for (int j = 0; j < input_dim_; ++j) {
    e[j] = 1.0;
    J.col(j) = coefficient((*this)(seed_line(x, e, 1)), 1);
    e[j] = 0.0;
  }
  return J;
}

Matrix SmoothMap::jacobian_fd(const Vector& x) const {
  return geodisc::jacobian_fd(as_function(), x);
}

VectorFunction SmoothMap::as_function() const {
  return [self = *this](const Vector& x) { return self(x); };
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (outer.input_dim() != inner.output_dim()) {
    throw DimensionMismatch("compose: inner output does not match outer input");
  }
  SmoothMap::EvalT<Series> series;
  SmoothMap::EvalT<Series2> series2;
  if (outer.has_series() && inner.has_series()) {
    series = [outer, inner](const SeriesVector& x) { return outer(inner(x)); };
  }
  if (outer.has_series2() && inner.has_series2()) {
    series2 = [outer, inner](const Series2Vector& x) { return outer(inner(x)); };
  }
  return SmoothMap(
      inner.input_dim(), outer.output_dim(),
      [outer, inner](const Vector& x) { return outer(inner(x)); }, std::move(series),
      std::move(series2));
}

Curve::Curve(int dim, Eval eval, EvalSeries eval_series)
    : dim_(dim), eval_(std::move(eval)), eval_series_(std::move(eval_series)) {}

Vector Curve::operator()(double t) const {
  Vector out = eval_(t);
  require_dim(out, dim_, "Curve value");
  return out;
}

SeriesVector Curve::operator()(const Series& t) const {
  if (!eval_series_) throw EvaluationFailure("curve has no Taylor evaluation");
  return eval_series_(t);
}

namespace {

// Second-order accurate central stencils for derivative `order` with step h.
// Their error expansions contain only even powers of h.
Vector central_stencil(const Curve& f, double t0, int order, double h) {
  switch (order) {
    case 1:
      return (f(t0 + h) - f(t0 - h)) / (2.0 * h);
    case 2:
      return (f(t0 + h) - 2.0 * f(t0) + f(t0 - h)) / (h * h);
    case 3:
      return (f(t0 + 2.0 * h) - 2.0 * f(t0 + h) + 2.0 * f(t0 - h) - f(t0 - 2.0 * h)) /
             (2.0 * h * h * h);
    case 4:
      return (f(t0 + 2.0 * h) - 4.0 * f(t0 + h) + 6.0 * f(t0) - 4.0 * f(t0 - h) +
              f(t0 - 2.0 * h)) /
             (h * h * h * h);
    default:
      throw UnsupportedOrder("central stencil order out of range");
  }
}

// Ridders' extrapolation of the central stencil in h^2.
Vector ridders(const Curve& f, double t0, int order) {
  constexpr int kLevels = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  constexpr double kSafe = 2.0;

  std::array<std::array<Vector, kLevels>, kLevels> table;
  double h = 0.2;  // well inside the radius of convergence of typical test curves
  table[0][0] = central_stencil(f, t0, order, h);
  Vector best = table[0][0];
  double best_err = std::numeric_limits<double>::infinity();

  for (int i = 1; i < kLevels; ++i) {
    h /= kShrink;
    table[0][i] = central_stencil(f, t0, order, h);
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      const double err = std::max((table[j][i] - table[j - 1][i]).lpNorm<Eigen::Infinity>(),
                                  (table[j][i] - table[j - 1][i - 1]).lpNorm<Eigen::Infinity>());
      if (err <= best_err) {
        best_err = err;
        best = table[j][i];
      }
    }
    if ((table[i][i] - table[i - 1][i - 1]).lpNorm<Eigen::Infinity>() >= kSafe * best_err) break;
  }
  return best;
}

}  // namespace

std::vector<Vector> taylor_derivatives(const Curve& f, double t0, int order,
                                       DerivativeBackend backend) {
  if (order < 0 || order > kMaxTaylorOrder) {
    std::ostringstream os;
    os << "taylor_derivatives supports orders 0.." << kMaxTaylorOrder << ", got " << order;
    throw UnsupportedOrder(os.str());
  }
  if (backend == DerivativeBackend::kAuto) {
    backend = f.has_series() ? DerivativeBackend::kTaylor : DerivativeBackend::kFiniteDifference;
  }

  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  if (backend == DerivativeBackend::kTaylor) {
    const SeriesVector value = f(Series::variable(t0, order));
    double factorial = 1.0;
    for (int r = 0; r <= order; ++r) {
      if (r > 0) factorial *= r;
      out.push_back(coefficient(value, r) * factorial);
    }
    return out;
  }

  out.push_back(f(t0));
  for (int r = 1; r <= order; ++r) out.push_back(ridders(f, t0, r));
  return out;
}

}  // namespace geodisc
