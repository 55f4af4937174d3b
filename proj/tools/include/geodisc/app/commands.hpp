#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geodisc/app/config.hpp"

namespace geodisc::app {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2 };

int cmd_simulate(const ExperimentConfig& config, std::ostream& out);
int cmd_shoot(const ExperimentConfig& config, std::ostream& out);

struct CheckCommand {
  std::vector<std::string> suites;
  std::vector<double> convergence_h{0.04, 0.02, 0.01};
  std::string json_path;
};
int cmd_check(const ExperimentConfig& config, const CheckCommand& command, std::ostream& out);

struct PlotCommand {
  std::string csv_path;
  std::string svg_path;
  double r = 1.0;
  std::vector<double> center{0.0, 0.0};
};
int cmd_plot(const PlotCommand& command, std::ostream& out);

/// Parses argv and dispatches. Every failure prints one line
/// "geodisc: error[Kind]: message" to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geodisc::app
