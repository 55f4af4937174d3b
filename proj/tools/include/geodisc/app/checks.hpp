#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geodisc/smooth_map.hpp"

namespace geodisc::app {

enum class CheckStatus { kPass, kFail, kInfo };

struct CheckEntry {
  std::string suite;
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  double defect = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 20240607;
  std::vector<std::string> suites;  // empty: every suite
  std::vector<double> convergence_h{0.04, 0.02, 0.01};
};

/// Suite names in execution order.
const std::vector<std::string>& check_suite_names();

/// Runs the requested suites. Unknown suite names throw ConfigError.
std::vector<CheckEntry> run_checks(const CheckOptions& options);

bool all_passed(const std::vector<CheckEntry>& entries);

/// {"passed": bool, "seed": n, "results": [{suite, case, status, defect, tolerance, detail}]}.
nlohmann::json report_json(const std::vector<CheckEntry>& entries, std::uint64_t seed);

std::string status_name(CheckStatus s);

/// t -> (q(t), xi(t)) with q = normalize(a + b t + c t^2) on the sphere and
/// xi = (I - q q^T)(d + e t + f t^2) tangent to it. Taylor-capable.
Curve sphere_tangent_curve(const Vector& a, const Vector& b, const Vector& c, const Vector& d,
                           const Vector& e, const Vector& f);

}  // namespace geodisc::app
