#pragma once

// Points of higher-order tangent bundles in coordinates.
//
// A Jet stores RAW derivatives (c(0), c'(0), ..., c^(k)(0)) of a curve.
// The 1/r! normalized coordinates are available through to_normalized()
// and from_normalized() only.

#include <vector>

#include "geodisc/numeric.hpp"
#include "geodisc/smooth_map.hpp"

namespace geodisc {

class Jet {
 public:
  Jet() = default;
  /// Throws DimensionMismatch on ragged slots, DomainViolation on non-finite
  /// entries, UnsupportedOrder for k > 4.
  explicit Jet(std::vector<Vector> derivs);

  /// Jet of order k in dimension n with all slots zero.
  static Jet zero(int order, int dim);
  /// Slots stacked as [c, c', ..., c^(k)].
  static Jet unflatten(const Vector& flat, int order, int dim);

  int order() const { return static_cast<int>(derivs_.size()) - 1; }
  int dim() const { return derivs_.empty() ? 0 : static_cast<int>(derivs_.front().size()); }

  const Vector& operator[](int r) const { return derivs_[static_cast<std::size_t>(r)]; }
  const std::vector<Vector>& derivs() const { return derivs_; }

  Vector flatten() const;

 private:
  std::vector<Vector> derivs_;
};

/// A point of T(T^(k)Q): a jet together with a velocity for each slot.
struct JetTangent {
  Jet base;
  std::vector<Vector> fiber;

  /// Checks that base and fiber agree in order and dimension.
  void validate() const;
  int order() const { return base.order(); }
  int dim() const { return base.dim(); }
};

Jet to_normalized(const Jet& j);
Jet from_normalized(const Jet& j);

enum class JetMethod {
  kAuto,              // Taylor when the map supports it, otherwise finite differences
  kTaylor,            // Taylor propagation through the map, k <= 4
  kFaaDiBruno,        // explicit chain rule for k <= 2
  kFiniteDifference,  // central differences of F along the jet's Taylor curve
};

/// T^(k)F: the jet of F∘c for any curve c with jet `j`.
Jet jet_pushforward(const SmoothMap& F, const Jet& j, JetMethod method = JetMethod::kAuto);

/// Canonical identification T(T^(k)Q) -> T^(k)(TQ). Slot r of the result
/// is (q^(r), v^(r)).
Jet phi_k(const JetTangent& x);
JetTangent phi_k_inverse(const Jet& tq_jet);

/// Jet of order k of c at t = 0.
Jet jet_of_curve(const Curve& c, int k, DerivativeBackend backend = DerivativeBackend::kAuto);

/// The polynomial curve t -> sum_r j[r] t^r / r! realizing a jet.
Curve taylor_curve(const Jet& j);

double factorial(int r);

/// Taylor propagation of raw jet slots through F at scalar level S. For
/// S = double this needs F's Series evaluation, for S = Series its nested one.
template <class S>
std::vector<VecT<S>> push_jet_slots(const SmoothMap& F, const std::vector<VecT<S>>& slots) {
  const int k = static_cast<int>(slots.size()) - 1;
  const Eigen::Index n = slots.front().size();
  VecT<Taylor<S>> x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Taylor<S> xi = Taylor<S>::zero(k);
    for (int r = 0; r <= k; ++r) xi[r] = slots[static_cast<std::size_t>(r)][i] / factorial(r);
    x[i] = xi;
  }
  const VecT<Taylor<S>> y = F.eval<Taylor<S>>(x);
  std::vector<VecT<S>> out;
  out.reserve(slots.size());
  for (int r = 0; r <= k; ++r) {
    VecT<S> slot(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) slot[i] = y[i][r] * factorial(r);
    out.push_back(std::move(slot));
  }
  return out;
}

}  // namespace geodisc
