#pragma once

// Small dense linear algebra helpers, Newton's method and finite differences.
// Every problem in this library has at most a dozen unknowns, so everything
// is dense and allocation is not a concern.

#include <functional>
#include <string_view>

#include <Eigen/Core>

#include "geodisc/taylor.hpp"

namespace geodisc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

template <class S>
using VecT = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using SeriesVector = VecT<Series>;
using Series2Vector = VecT<Series2>;

using VectorFunction = std::function<Vector(const Vector&)>;
using MatrixFunction = std::function<Matrix(const Vector&)>;

/// Throws DomainViolation if `v` holds a NaN or infinity.
void require_finite(const Vector& v, std::string_view what);

/// Throws DimensionMismatch unless `v.size() == expected`.
void require_dim(const Vector& v, Eigen::Index expected, std::string_view what);

/// Concatenate two vectors.
Vector concat(const Vector& a, const Vector& b);

/// Default central-difference step: 1e-5 * max(1, |x|_inf).
double default_fd_step(const Vector& x);

/// Central-difference Jacobian. Entry (i, j) is
/// (f_i(x + eps e_j) - f_i(x - eps e_j)) / (2 eps), with 2 eps taken as the
/// floating-point distance between the two probes.
/// Throws EvaluationFailure if `f` throws at a probe point.
Matrix jacobian_fd(const VectorFunction& f, const Vector& x, double eps);
Matrix jacobian_fd(const VectorFunction& f, const Vector& x);

struct NewtonOptions {
  double tol = 1e-12;  // on |residual|_inf
  int max_iter = 50;
  /// Halve the step while the residual fails to decrease or the trial point
  /// cannot be evaluated (the residual threw a geodisc::Error).
  bool backtracking = false;
  int max_backtracks = 30;
};

struct NewtonSolution {
  Vector x;
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Undamped Newton iteration from `x0` until |residual(x)|_inf <= tol.
///
/// Uses `jacobian` when given, otherwise jacobian_fd of the residual.
/// Throws NonConvergence (carrying the best iterate) when max_iter is
/// exhausted and SingularJacobian when the linear solve fails.
NewtonSolution newton_solve(const VectorFunction& residual, const Vector& x0,
                            const NewtonOptions& options = {},
                            const MatrixFunction& jacobian = {});

/// Solve J x = b with full pivoting; throws SingularJacobian if J is singular.
Vector solve_dense(const Matrix& J, const Vector& b);

}  // namespace geodisc
