#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geodisc/lifts.hpp"
#include "geodisc/optimal_control.hpp"

namespace geodisc::app {

/// Bad or missing configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { kFree, kObstacle, kSE2, kSphereLiftCheck };

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::kFree;
  std::optional<int> n;
  double h = 0.01;
  std::optional<int> steps;
  std::optional<double> T;
  double tau = 1e-20;
  double r = 1.0;
  std::vector<double> center{0.0, 0.0};
  std::optional<std::vector<double>> init;      // (q, qdot, p0, p1), 4n values
  std::optional<std::vector<double>> boundary;  // (q_start, qdot_start, q_end, qdot_end)
  std::optional<std::vector<double>> guess;     // (p0, p1), 2n values
  std::string discretization = "midpoint";       // midpoint | theta:<value>
  double tol = 1e-10;
  bool cost_includes_potential = true;
  bool trapezoid_cost = false;
  std::string csv_path;
  std::string svg_path;
  std::uint64_t seed = 20240607;
};

ProblemKind parse_problem(const std::string& name);
std::string problem_name(ProblemKind kind);

/// Comma-separated reals ("1,2.5,-3").
std::vector<double> parse_list(const std::string& text, const std::string& what);

/// Reads the JSON keys of ExperimentConfig (same names as the CLI flags).
void apply_json(ExperimentConfig& config, const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

/// Applies GEODISC_SEED if set.
void apply_environment(ExperimentConfig& config);

/// Dimension implied by the config: explicit n, or the length of the
/// initial state / boundary data, or 3 for the SE(2) problem.
int resolve_dim(const ExperimentConfig& config);

/// Cotangent lift of the first-order lift of the configured map on R^n.
CotangentLiftedMap make_integrator_map(const std::string& discretization, int n);

std::optional<Obstacle> make_obstacle(const ExperimentConfig& config);

}  // namespace geodisc::app
