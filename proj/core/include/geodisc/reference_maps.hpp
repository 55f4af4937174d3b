#pragma once

// Closed-form versions of maps that the library otherwise builds generically.
// They are kept as independent references for tests and the check suites.

#include <utility>

#include "geodisc/jets.hpp"
#include "geodisc/lifts.hpp"

namespace geodisc::reference {

/// Cotangent lift of the midpoint map on R^n:
/// (q, p, qdot, pdot) -> (q - qdot/2, p - pdot/2; q + qdot/2, p + pdot/2).
CotangentLiftedMap midpoint_cotangent(int n);

/// First-order cotangent lift of the midpoint map on T*(TQ), written
/// componentwise on (q, qdot, p0, p1; qdot', qddot, p0dot, p1dot).
CotangentLiftedMap lifted_midpoint_on_tstar_tq(int n);

/// R_d^(2) of the midpoint map on flat coordinates
/// (q, qdot, qddot; v, vdot, vddot) -> (q - v/2, ...; q + v/2, ...).
Vector midpoint_second_lift(const Vector& x, int n);

/// T^(2)R_d of the sphere initial-point map at (q, xi; qdot, xidot; qddot, xiddot),
/// returned as the two second-order jets. `as_printed` reproduces the
/// displayed formula whose last term is linear in xi·xidot; otherwise the
/// term is squared, which is what differentiating twice gives.
std::pair<Jet, Jet> sphere_initial_point_second_lift(const Vector& q, const Vector& xi,
                                                      const Vector& qdot, const Vector& xidot,
                                                      const Vector& qddot, const Vector& xiddot,
                                                      bool as_printed);

}  // namespace geodisc::reference
