#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geodisc/numeric.hpp"
#include "geodisc/smooth_map.hpp"

namespace geodisc {

/// (q-, q+): the two nearby configurations a discretization map produces.
struct PointPair {
  Vector minus;
  Vector plus;
};

/// A point (q, v) of TQ.
struct TangentPoint {
  Vector point;
  Vector velocity;
};

/// An invertible map R_d : TQ -> Q x Q with R_d(q, 0) = (q, q) and
/// T R^2 - T R^1 = Id along the fibers at the zero section.
///
/// Coordinates are flat: a point of TQ is the stacked vector (q, v) of
/// length 2n, and so is a point (q-, q+) of Q x Q. The fiber frame describes
/// which directions of v are admissible (all of R^n for Euclidean spaces,
/// the tangent plane for the sphere) and how fiber coordinates identify with
/// coordinate tangent vectors (non-trivial for left-trivialized Lie groups).
class DiscretizationMap {
 public:
  /// Returns a reason when the arguments lie outside the validity domain.
  using DomainCheck = std::function<std::optional<std::string>(const Vector&, const Vector&)>;
  using Frame = std::function<Matrix(const Vector&)>;

  struct Parts {
    std::string name;
    int dim = 0;
    SmoothMap forward;  // (q, v) -> (q-, q+)
    SmoothMap inverse;  // (q-, q+) -> (q, v)
    DomainCheck forward_domain;
    DomainCheck inverse_domain;
    Frame fiber_basis;     // n x d, columns span the admissible fiber at q
    Frame trivialization;  // n x n, fiber coordinates -> coordinate tangent vectors
    // Taylor-capable versions of the trivialization on stacked coordinates,
    // (q, xi) -> (q, v) and back. Left empty when the fiber coordinates are
    // already coordinate velocities.
    SmoothMap to_coordinates;
    SmoothMap from_coordinates;
  };

  DiscretizationMap() = default;
  explicit DiscretizationMap(Parts parts);

  const std::string& name() const { return parts_.name; }
  int dim() const { return parts_.dim; }

  /// Checked evaluation; throws DomainViolation outside the validity domain.
  PointPair forward(const Vector& q, const Vector& v) const;
  TangentPoint inverse(const Vector& q_minus, const Vector& q_plus) const;

  /// d(q-, q+)/d(q, v), 2n x 2n, exact when the map supports Taylor evaluation.
  Matrix jacobian_forward(const Vector& q, const Vector& v) const;

  std::optional<std::string> domain_violation(const Vector& q, const Vector& v) const;
  std::optional<std::string> inverse_domain_violation(const Vector& q_minus,
                                                      const Vector& q_plus) const;

  /// Unchecked formulas on stacked coordinates.
  const SmoothMap& forward_map() const { return parts_.forward; }
  const SmoothMap& inverse_map() const { return parts_.inverse; }

  Matrix fiber_basis(const Vector& q) const;
  Matrix trivialization(const Vector& q) const;

  /// The same map taking coordinate velocities v = T(q) xi. Returns the map
  /// itself when it has no trivialization. Lifts are built on this form.
  DiscretizationMap coordinate_form() const;

 private:
  Parts parts_;
};

/// R_d(q, v) = (q - v/2, q + v/2) on R^n.
DiscretizationMap midpoint_map(int n);

/// R_d(q, v) = (q - theta v, q + (1 - theta) v) on R^n, theta in [0, 1].
DiscretizationMap theta_map(int n, double theta);

/// R_d(q, xi) = (q, (q + xi)/|q + xi|) on S^2 in ambient R^3 coordinates.
DiscretizationMap sphere_initial_point_map();

/// R_d(q, xi) = (exp_q(-xi/2), exp_q(xi/2)) with the great-circle exponential.
DiscretizationMap sphere_geodesic_midpoint_map();

/// R_d(g, xi) = (g exp(-xi/2), g exp(xi/2)) on SE(2), g = (x, y, theta),
/// xi = (v1, v2, omega) in the left-trivialized Lie algebra.
DiscretizationMap se2_exp_map();

/// Great-circle exponential exp_q(xi) = cos|xi| q + sin|xi| xi/|xi|.
Vector sphere_exp(const Vector& q, const Vector& xi);

/// SE(2) group exponential and product in (x, y, theta) coordinates.
Vector se2_exp(const Vector& xi);
Vector se2_compose(const Vector& g, const Vector& h);

struct AxiomSample {
  Vector point;
  double zero_section_defect = 0.0;  // |R_d(q, 0) - (q, q)|_inf
  double identity_defect = 0.0;      // |(T R^2 - T R^1) B - T B|_inf along the fiber frame
  bool passed = false;
};

struct AxiomReport {
  std::vector<AxiomSample> samples;
  double tolerance = 0.0;

  bool passed() const;
  double max_defect() const;
};

/// Check both discretization-map axioms at each base point, the second one
/// by central differences restricted to the fiber directions at v = 0.
AxiomReport verify_discretization_axioms(const DiscretizationMap& map,
                                         const std::vector<Vector>& base_points, double tol);

}  // namespace geodisc
