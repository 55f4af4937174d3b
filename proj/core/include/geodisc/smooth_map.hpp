#pragma once

// Type-erased smooth maps R^in -> R^out and curves R -> R^n that can be
// evaluated on plain doubles and, when built from a generic kernel, on
// truncated Taylor series as well.

#include <functional>
#include <utility>
#include <vector>

#include "geodisc/numeric.hpp"

namespace geodisc {

class SmoothMap {
 public:
  template <class S>
  using EvalT = std::function<VecT<S>(const VecT<S>&)>;

  SmoothMap() = default;
  SmoothMap(int input_dim, int output_dim, EvalT<double> eval, EvalT<Series> eval_series = {},
            EvalT<Series2> eval_series2 = {});

  /// Build from a generic callable `kernel(const VecT<S>&) -> VecT<S>` that
  /// is instantiated for S = double, Series and Series2.
  template <class Kernel>
  static SmoothMap from_kernel(int input_dim, int output_dim, Kernel kernel) {
    return SmoothMap(
        input_dim, output_dim, [kernel](const Vector& x) -> Vector { return kernel(x); },
        [kernel](const SeriesVector& x) -> SeriesVector { return kernel(x); },
        [kernel](const Series2Vector& x) -> Series2Vector { return kernel(x); });
  }

  /// Double-only map; derivatives fall back to finite differences.
  static SmoothMap from_function(int input_dim, int output_dim, EvalT<double> f);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return output_dim_; }

  bool has_series() const { return static_cast<bool>(eval_series_); }
  bool has_series2() const { return static_cast<bool>(eval_series2_); }

  Vector operator()(const Vector& x) const;
  SeriesVector operator()(const SeriesVector& x) const;
  Series2Vector operator()(const Series2Vector& x) const;

  template <class S>
  VecT<S> eval(const VecT<S>& x) const {
    return (*this)(x);
  }

  /// Jacobian at x: exact by first-order Taylor propagation when available,
  /// central differences otherwise.
  Matrix jacobian(const Vector& x) const;
  Matrix jacobian_fd(const Vector& x) const;

  VectorFunction as_function() const;

 private:
  int input_dim_ = 0;
  int output_dim_ = 0;
  EvalT<double> eval_;
  EvalT<Series> eval_series_;
  EvalT<Series2> eval_series2_;
};

/// outer ∘ inner, evaluable at every level both operands support.
SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

class Curve {
 public:
  using Eval = std::function<Vector(double)>;
  using EvalSeries = std::function<SeriesVector(const Series&)>;

  Curve() = default;
  Curve(int dim, Eval eval, EvalSeries eval_series = {});

  /// Build from a generic callable `kernel(S t) -> VecT<S>` for S = double
  /// and Series.
  template <class Kernel>
  static Curve from_kernel(int dim, Kernel kernel) {
    return Curve(
        dim, [kernel](double t) -> Vector { return kernel(t); },
        [kernel](const Series& t) -> SeriesVector { return kernel(t); });
  }

  int dim() const { return dim_; }
  bool has_series() const { return static_cast<bool>(eval_series_); }

  Vector operator()(double t) const;
  SeriesVector operator()(const Series& t) const;

 private:
  int dim_ = 0;
  Eval eval_;
  EvalSeries eval_series_;
};

enum class DerivativeBackend {
  kAuto,              // Taylor when the curve supports it, else finite differences
  kTaylor,            // truncated Taylor propagation (exact up to round-off)
  kFiniteDifference,  // Richardson-extrapolated central differences
};

/// Raw derivatives f(t0), f'(t0), ..., f^(order)(t0). order must be in [0, 4].
std::vector<Vector> taylor_derivatives(const Curve& f, double t0, int order,
                                       DerivativeBackend backend = DerivativeBackend::kAuto);

/// Series x + t * direction with the given truncation order.
template <class S = double>
VecT<Taylor<S>> seed_line(const VecT<S>& x, const VecT<S>& direction, int order) {
  VecT<Taylor<S>> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Taylor<S> xi = Taylor<S>::zero(order);
    xi[0] = x[i];
    if (order >= 1) xi[1] = direction[i];
    out[i] = xi;
  }
  return out;
}

/// Vector of coefficient `r` of each entry of a series vector.
template <class S>
VecT<S> coefficient(const VecT<Taylor<S>>& x, int r) {
  VecT<S> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = x[i][r];
  return out;
}

/// Constant series vector (order 0) from plain values.
template <class S>
VecT<Taylor<S>> constant_series(const VecT<S>& x) {
  VecT<Taylor<S>> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = Taylor<S>(x[i]);
  return out;
}

}  // namespace geodisc
