#pragma once

// Lifts of a discretization map R_d:
//   * the tangent lift TR_d : T(TQ) -> TQ x TQ,
//   * the higher-order lift R_d^(k) = T^(k)R_d ∘ Φ^(k) on T^(k)Q,
//   * the cotangent lift on T*M, which is again a discretization map and a
//     symplectomorphism onto (T*M x T*M, pr2*ω - pr1*ω).

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "geodisc/discretization.hpp"
#include "geodisc/jets.hpp"

namespace geodisc {

struct TangentPair {
  TangentPoint minus;
  TangentPoint plus;
};

/// TR_d(q, v, qdot, vdot) = (R_d(q, v), D R_d(q, v) (qdot, vdot)), grouped as
/// the two TQ points (q-, qdot-) and (q+, qdot+).
class TangentLift {
 public:
  explicit TangentLift(DiscretizationMap base) : base_(std::move(base)) {}

  TangentPair forward(const Vector& q, const Vector& v, const Vector& qdot,
                      const Vector& vdot) const;
  const DiscretizationMap& base() const { return base_; }

 private:
  DiscretizationMap base_;
};

TangentLift tangent_lift(const DiscretizationMap& base);

class HigherOrderDiscretizationMap {
 public:
  HigherOrderDiscretizationMap(DiscretizationMap base, int order,
                               JetMethod method = JetMethod::kAuto);

  /// Coordinate form of the map the lift was built from.
  const DiscretizationMap& base() const { return base_; }
  int order() const { return order_; }
  JetMethod method() const { return method_; }

  /// X in T(T^(k)Q) -> (z-, z+) in T^(k)Q x T^(k)Q.
  std::pair<Jet, Jet> forward(const JetTangent& x) const;
  JetTangent inverse(const Jet& minus, const Jet& plus) const;

  /// The same map as a discretization map on T^(k)Q, whose points are jets
  /// flattened as (q, q', ..., q^(k)). Dimension (k + 1) n.
  DiscretizationMap as_map() const;

 private:
  DiscretizationMap base_;
  int order_;
  JetMethod method_;
};

HigherOrderDiscretizationMap higher_order_lift(const DiscretizationMap& base, int order,
                                               JetMethod method = JetMethod::kAuto);

/// (m-, p-; m+, p+) in T*M x T*M.
struct CotangentPair {
  Vector m0, p0, m1, p1;
};

/// (m, p, mdot, pdot) in T(T*M).
struct CotangentTangent {
  Vector m, p, mdot, pdot;
};

/// A discretization map on T*M. Flat coordinates: inputs (m, p, mdot, pdot),
/// outputs (m0, p0, m1, p1), each block of the base dimension.
class CotangentLiftedMap {
 public:
  using FlatMap = std::function<Vector(const Vector&)>;

  CotangentLiftedMap(std::string name, int base_dim, FlatMap forward, FlatMap inverse);

  const std::string& name() const { return name_; }
  int base_dim() const { return base_dim_; }
  int phase_dim() const { return 2 * base_dim_; }

  Vector forward_flat(const Vector& x) const;
  Vector inverse_flat(const Vector& y) const;

  CotangentPair forward(const Vector& m, const Vector& p, const Vector& mdot,
                        const Vector& pdot) const;
  /// Inverse from the phase points z0 = (m0, p0) and z1 = (m1, p1).
  CotangentTangent inverse(const Vector& z0, const Vector& z1) const;

  /// View as a discretization map on T*M with phase points z = (m, p).
  DiscretizationMap as_map() const;

 private:
  std::string name_;
  int base_dim_;
  FlatMap forward_;
  FlatMap inverse_;
};

/// Cotangent lift Φ^-1 ∘ (T R_d^-1)^* ∘ α of a discretization map on M.
///
/// The covectors solve (-p0, p1) = (pdot, p) J^-1 with J the Jacobian of the
/// base map at (m, mdot), using row covectors. Maps with a trivialized fiber
/// are lifted through their coordinate form, so mdot is a coordinate velocity.
CotangentLiftedMap cotangent_lift(const DiscretizationMap& base);

/// Cotangent lift of the first-order lift of `base`, the map that drives the
/// integrator on T*(TQ). Phase points are (q, qdot, p0, p1).
CotangentLiftedMap lifted_cotangent_map(const DiscretizationMap& base);

struct SymplecticSample {
  Vector point;
  double defect = 0.0;
};

struct SymplecticReport {
  std::vector<SymplecticSample> samples;
  double tolerance = 0.0;

  double max_defect() const;
  bool passed() const { return max_defect() <= tolerance; }
};

/// Matrix of the canonical form sum dq^i ∧ dp_i on (q, p) coordinates.
Matrix canonical_form(int n);

/// Constant matrix of d_T ω = dm ∧ dpdot + dmdot ∧ dp on (m, p, mdot, pdot).
Matrix tangent_symplectic_form(int m);

/// Block-diag(-ω, ω) on (m0, p0, m1, p1).
Matrix product_symplectic_form(int m);

/// Checks S^T Ω12 S = W at each sample, S the central-difference Jacobian.
SymplecticReport check_symplectomorphism(const CotangentLiftedMap& map,
                                         const std::vector<Vector>& samples, double tol);
SymplecticReport check_symplectomorphism(const VectorFunction& forward_flat, int base_dim,
                                         const std::vector<Vector>& samples, double tol);

}  // namespace geodisc
