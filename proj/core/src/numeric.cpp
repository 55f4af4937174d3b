#include "geodisc/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "geodisc/errors.hpp"

namespace geodisc {

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw DomainViolation(std::string(what) + " has non-finite entries");
  }
}

void require_dim(const Vector& v, Eigen::Index expected, std::string_view what) {
  if (v.size() != expected) {
    std::ostringstream os;
    os << what << " has dimension " << v.size() << ", expected " << expected;
    throw DimensionMismatch(os.str());
  }
}

Vector concat(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

double default_fd_step(const Vector& x) {
  const double scale = x.size() > 0 ? x.lpNorm<Eigen::Infinity>() : 0.0;
  return 1e-5 * std::max(1.0, scale);
}

Matrix jacobian_fd(const VectorFunction& f, const Vector& x, double eps) {
  if (!(eps > 0.0)) throw DomainViolation("jacobian_fd: eps must be positive");
  auto probe = [&](const Vector& at) {
    try {
      return f(at);
    } catch (const std::exception& e) {
      throw EvaluationFailure(std::string("jacobian_fd: function failed at probe point: ") +
                              e.what());
    }
  };
  Matrix J;
  Vector xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    // Divide by the spacing of the probes actually evaluated, not 2 eps.
    const double hi = x[j] + eps;
    const double lo = x[j] - eps;
    xp[j] = hi;
    const Vector fp = probe(xp);
    xp[j] = lo;
    const Vector fm = probe(xp);
    xp[j] = x[j];
    if (j == 0) J.resize(fp.size(), x.size());
    J.col(j) = (fp - fm) / (hi - lo);
  }
  return J;
}

Matrix jacobian_fd(const VectorFunction& f, const Vector& x) {
  return jacobian_fd(f, x, default_fd_step(x));
}

Vector solve_dense(const Matrix& J, const Vector& b) {
  if (J.rows() != J.cols() || J.rows() != b.size()) {
    throw DimensionMismatch("solve_dense: system is not square");
  }
  Eigen::FullPivLU<Matrix> lu(J);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "linear solve failed: Jacobian of size " << J.rows() << " has rank " << lu.rank();
    throw SingularJacobian(os.str());
  }
  return lu.solve(b);
}

NewtonSolution newton_solve(const VectorFunction& residual, const Vector& x0,
                            const NewtonOptions& options, const MatrixFunction& jacobian) {
  if (!(options.tol > 0.0)) throw DomainViolation("newton_solve: tol must be positive");

  Vector x = x0;
  Vector r = residual(x);
  require_dim(r, x.size(), "newton_solve residual");
  double norm = r.lpNorm<Eigen::Infinity>();
  if (!std::isfinite(norm)) throw EvaluationFailure("newton_solve: residual is not finite at x0");

  Vector best = x;
  double best_norm = norm;

  int it = 0;
  for (; norm > options.tol && it < options.max_iter; ++it) {
    const Matrix J = jacobian ? jacobian(x) : jacobian_fd(residual, x);
    const Vector dx = solve_dense(J, -r);

    if (!options.backtracking) {
      x += dx;
      r = residual(x);
      norm = r.lpNorm<Eigen::Infinity>();
    } else {
      double lambda = 1.0;
      bool accepted = false;
      for (int k = 0; k <= options.max_backtracks; ++k, lambda *= 0.5) {
        const Vector trial = x + lambda * dx;
        Vector trial_r;
        try {
          trial_r = residual(trial);
        } catch (const Error&) {
          continue;
        }
        const double trial_norm = trial_r.lpNorm<Eigen::Infinity>();
        if (std::isfinite(trial_norm) && trial_norm < norm) {
          x = trial;
          r = std::move(trial_r);
          norm = trial_norm;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }

    if (!std::isfinite(norm)) break;
    if (norm < best_norm) {
      best = x;
      best_norm = norm;
    }
  }

  if (norm <= options.tol) return {x, it, norm};

  std::ostringstream os;
  os << "newton_solve did not converge after " << it << " iterations; residual " << best_norm
     << " > tol " << options.tol;
  throw NonConvergence(os.str(), best, best_norm, it);
}

}  // namespace geodisc
