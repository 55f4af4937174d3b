#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace geodisc {

/// Base of every error thrown by the library. `kind()` is a stable,
/// machine-parsable tag used by the CLI error prefix.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Newton iteration cap hit. Carries the best iterate seen.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& message, Eigen::VectorXd best, double residual_norm,
                 int iterations)
      : Error("NonConvergence", message),
        best_(std::move(best)),
        residual_norm_(residual_norm),
        iterations_(iterations) {}

  const Eigen::VectorXd& best() const noexcept { return best_; }
  double residual_norm() const noexcept { return residual_norm_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Eigen::VectorXd best_;
  double residual_norm_;
  int iterations_;
};

#define GEODISC_DEFINE_ERROR(Name)                                           \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(const std::string& message) : Error(#Name, message) {}     \
  }

GEODISC_DEFINE_ERROR(SingularJacobian);
GEODISC_DEFINE_ERROR(EvaluationFailure);
GEODISC_DEFINE_ERROR(UnsupportedOrder);
GEODISC_DEFINE_ERROR(DomainViolation);
GEODISC_DEFINE_ERROR(DimensionMismatch);
GEODISC_DEFINE_ERROR(TooFewPoints);
GEODISC_DEFINE_ERROR(BadDiscretization);
GEODISC_DEFINE_ERROR(StartInsideObstacle);
GEODISC_DEFINE_ERROR(ObstaclePenetration);
GEODISC_DEFINE_ERROR(SingularPotential);

#undef GEODISC_DEFINE_ERROR

}  // namespace geodisc
