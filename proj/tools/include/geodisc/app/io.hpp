#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodisc/integrator.hpp"

namespace geodisc::app {

/// Unreadable or malformed input file. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes `content` to a temporary file next to `path` and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

/// Header t, q0.., qdot0.., p0_0.., p1_0.., u0.., H, clearance.
std::string trajectory_csv(const Trajectory& traj, const std::vector<double>& clearance);

/// Columns of a CSV file with a header row. Blank cells are NaN.
struct CsvTable {
  std::vector<std::string> header;
  std::map<std::string, std::vector<double>> columns;
  std::size_t rows = 0;

  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

struct Circle {
  double cx = 0.0, cy = 0.0, r = 1.0;
};

/// SVG document with the polyline through (x, y) and an optional circle.
std::string xy_svg(const std::vector<double>& x, const std::vector<double>& y,
                   const std::optional<Circle>& circle);

/// printf("%.17g").
std::string format_real(double v);

}  // namespace geodisc::app
