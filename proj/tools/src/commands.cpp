#include "geodisc/app/commands.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "geodisc/app/checks.hpp"
#include "geodisc/app/io.hpp"
#include "geodisc/errors.hpp"

namespace geodisc::app {

namespace {

Vector to_vector(const std::vector<double>& v) {
  return Vector::Map(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string vec_str(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
  return s;
}

std::vector<Vector> split_blocks(const std::vector<double>& data, int blocks, int n,
                                 const std::string& what) {
  if (static_cast<int>(data.size()) != blocks * n) {
    std::ostringstream os;
    os << what << " needs " << blocks * n << " values (" << blocks << " blocks of n=" << n << "), got "
       << data.size();
    throw ConfigError(os.str());
  }
  std::vector<Vector> out;
  for (int b = 0; b < blocks; ++b) out.push_back(to_vector(data).segment(b * n, n));
  return out;
}

void check_common(const ExperimentConfig& c) {
  if (!(c.h > 0.0) || !std::isfinite(c.h)) throw ConfigError("h must be positive");
  if (c.steps && *c.steps < 1) throw ConfigError("steps must be at least 1");
  if (c.init && c.boundary) throw ConfigError("give exactly one of init and boundary");
  if (c.problem == ProblemKind::kSphereLiftCheck) {
    throw ConfigError("problem sphere-lift-check has no trajectory; run `check --suite sphere-lift`");
  }
  if (c.problem == ProblemKind::kSE2 && c.n && *c.n != 3) throw ConfigError("se2 problem has n = 3");
}

void write_outputs(const ExperimentConfig& c, const Trajectory& traj,
                   const std::vector<double>& clearance, const std::optional<Obstacle>& obstacle,
                   std::ostream& out) {
  const std::string csv = c.csv_path.empty() ? "trajectory.csv" : c.csv_path;
  write_atomic(csv, trajectory_csv(traj, clearance));
  out << "csv " << csv << " rows " << traj.states.size() << "\n";
  if (!c.svg_path.empty()) {
    if (traj.n < 2) throw ConfigError("svg output needs n >= 2");
    std::vector<double> x, y;
    for (const SecondOrderState& s : traj.states) {
      x.push_back(s.q[0]);
      y.push_back(s.q[1]);
    }
    std::optional<Circle> circle;
    if (obstacle) circle = Circle{obstacle->center[0], obstacle->center[1], obstacle->r};
    write_atomic(c.svg_path, xy_svg(x, y, circle));
    out << "svg " << c.svg_path << "\n";
  }
}

}  // namespace

int cmd_simulate(const ExperimentConfig& c, std::ostream& out) {
  check_common(c);
  if (!c.init) throw ConfigError("simulate needs an initial state (--init q,qdot,p0,p1)");
  const int n = resolve_dim(c);
  const std::vector<Vector> s = split_blocks(*c.init, 4, n, "init");
  const int N = c.steps ? *c.steps : (c.T ? static_cast<int>(std::lround(*c.T / c.h)) : 400);

  OCProblem prob = make_initial_value_problem(n, make_obstacle(c), c.h, N);
  prob.cost_includes_potential = c.cost_includes_potential;
  const SimulationReport report =
      simulate(prob, make_integrator_map(c.discretization, n), {s[0], s[1], s[2], s[3]});
  const Trajectory& traj = report.trajectory;
  const SecondOrderState& last = traj.states.back();
  write_outputs(c, traj, report.clearance, prob.obstacle, out);
  out << "steps " << traj.steps() << "\n"
      << "final q " << vec_str(last.q) << " qdot " << vec_str(last.qdot) << " p0 " << vec_str(last.p0)
      << " p1 " << vec_str(last.p1) << "\n"
      << "H_drift " << format_real(report.H_drift) << "\n";
  if (prob.obstacle) out << "min_clearance " << format_real(report.min_clearance) << "\n";
  const double J = cost_of(traj, prob, c.trapezoid_cost ? CostRule::kTrapezoid : CostRule::kLeftEndpoint);
  out << "J " << format_real(J) << "\n";
  return kExitOk;
}

int cmd_shoot(const ExperimentConfig& c, std::ostream& out) {
  check_common(c);
  if (!c.boundary) throw ConfigError("shoot needs boundary data (--boundary q_start,qdot_start,q_end,qdot_end)");
  if (!(c.tol >= 0.0)) throw ConfigError("tol must be non-negative");
  const int n = resolve_dim(c);
  const std::vector<Vector> b = split_blocks(*c.boundary, 4, n, "boundary");
  double T = 0.0;
  if (c.T) T = *c.T;
  else if (c.steps) T = *c.steps * c.h;
  else throw ConfigError("shoot needs the horizon (--T or --steps)");

  const Boundary boundary{b[0], b[1], b[2], b[3]};
  const std::optional<Obstacle> obstacle = make_obstacle(c);
  OCProblem prob = obstacle ? make_obstacle_problem(n, *obstacle, boundary, T, c.h)
                            : make_free_spline(n, boundary, T, c.h);
  prob.cost_includes_potential = c.cost_includes_potential;
  Vector p0 = Vector::Zero(n), p1 = Vector::Zero(n);
  if (c.guess) {
    const std::vector<Vector> g = split_blocks(*c.guess, 2, n, "guess");
    p0 = g[0];
    p1 = g[1];
  }
  ShootingOptions options;
  options.tol = c.tol;
  options.cost_rule = c.trapezoid_cost ? CostRule::kTrapezoid : CostRule::kLeftEndpoint;
  const ShootingResult result = shoot(prob, make_integrator_map(c.discretization, n), p0, p1, options);

  std::vector<double> clearance;
  if (obstacle) {
    for (const SecondOrderState& s : result.trajectory.states) clearance.push_back(obstacle_clearance(*obstacle, s.q));
  }
  write_outputs(c, result.trajectory, clearance, obstacle, out);
  out << "converged " << (result.converged ? "true" : "false") << "\n"
      << "iterations " << result.iterations << "\n"
      << "p0 " << vec_str(result.p0) << "\n"
      << "p1 " << vec_str(result.p1) << "\n"
      << "defect " << format_real(result.defect) << "\n"
      << "J " << format_real(result.cost) << "\n";
  if (!result.converged) {
    std::ostringstream os;
    os << "shooting did not reach tol " << format_real(c.tol) << "; terminal defect "
       << format_real(result.defect) << " after " << result.iterations << " iterations";
    throw NonConvergence(os.str(), concat(result.p0, result.p1), result.defect, result.iterations);
  }
  return kExitOk;
}

int cmd_check(const ExperimentConfig& c, const CheckCommand& command, std::ostream& out) {
  CheckOptions options;
  options.seed = c.seed;
  options.suites = command.suites;
  if (options.suites.empty() && c.problem == ProblemKind::kSphereLiftCheck) options.suites = {"sphere-lift"};
  options.convergence_h = command.convergence_h;
  const std::vector<CheckEntry> entries = run_checks(options);
  const nlohmann::json report = report_json(entries, c.seed);
  const std::string text = report.dump(2) + "\n";
  if (!command.json_path.empty()) write_atomic(command.json_path, text);
  out << text;
  if (!all_passed(entries)) throw Error("CheckFailed", "one or more check suites failed");
  return kExitOk;
}

int cmd_plot(const PlotCommand& command, std::ostream& out) {
  const CsvTable table = read_csv(command.csv_path);
  const std::vector<double>& x = table.column("q0");
  const std::vector<double>& y = table.column("q1");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw InputError("CSV has blank or non-finite q0/q1 cells");
  }
  std::optional<Circle> circle;
  if (table.columns.count("clearance")) {
    for (double v : table.column("clearance")) {
      if (std::isfinite(v)) {
        if (command.center.size() != 2) throw ConfigError("center must have two entries");
        circle = Circle{command.center[0], command.center[1], command.r};
        break;
      }
    }
  }
  write_atomic(command.svg_path, xy_svg(x, y, circle));
  out << "svg " << command.svg_path << " points " << x.size() << (circle ? " circle 1" : " circle 0") << "\n";
  return kExitOk;
}

namespace {

struct Flags {
  std::string config_path;
  std::string problem, init, boundary, guess, center, discretization, csv, svg;
  std::optional<int> n, steps;
  std::optional<double> h, T, tau, r, tol;
  std::optional<std::uint64_t> seed;
  bool no_potential_cost = false;
  bool trapezoid = false;
};

void add_config_flags(CLI::App* cmd, Flags& f) {
  cmd->set_help_flag("--help", "print this help");
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd->add_option("--problem", f.problem, "free | obstacle | se2 | sphere-lift-check");
  cmd->add_option("--seed", f.seed, "seed for randomized checks");
  if (cmd->get_name() == "check") return;
  cmd->add_option("--n", f.n, "configuration dimension");
  cmd->add_option("--h", f.h, "step size");
  cmd->add_option("--steps", f.steps, "number of steps N");
  cmd->add_option("--T", f.T, "horizon (multiple of h)");
  cmd->add_option("--tau", f.tau, "obstacle potential strength");
  cmd->add_option("--r", f.r, "obstacle radius");
  cmd->add_option("--center", f.center, "obstacle center x,y");
  cmd->add_option("--init", f.init, "initial state q,qdot,p0,p1 (4n values)");
  cmd->add_option("--boundary", f.boundary, "q_start,qdot_start,q_end,qdot_end (4n values)");
  cmd->add_option("--guess", f.guess, "initial costate guess p0,p1 (2n values)");
  cmd->add_option("--discretization", f.discretization, "midpoint | theta:<value>");
  cmd->add_option("--tol", f.tol, "shooting tolerance on the terminal defect");
  cmd->add_option("--csv", f.csv, "trajectory CSV output");
  cmd->add_option("--svg", f.svg, "xy plot SVG output");
  cmd->add_flag("--cost-without-potential", f.no_potential_cost, "exclude V from the cost J");
  cmd->add_flag("--trapezoid", f.trapezoid, "trapezoid rule for the cost instead of left endpoint");
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig c = f.config_path.empty() ? ExperimentConfig{} : load_config_file(f.config_path);
  if (!f.problem.empty()) c.problem = parse_problem(f.problem);
  if (f.n) c.n = f.n;
  if (f.h) c.h = *f.h;
  if (f.steps) c.steps = f.steps;
  if (f.T) c.T = f.T;
  if (f.tau) c.tau = *f.tau;
  if (f.r) c.r = *f.r;
  if (f.tol) c.tol = *f.tol;
  if (!f.center.empty()) c.center = parse_list(f.center, "center");
  if (!f.init.empty()) c.init = parse_list(f.init, "init");
  if (!f.boundary.empty()) c.boundary = parse_list(f.boundary, "boundary");
  if (!f.guess.empty()) c.guess = parse_list(f.guess, "guess");
  if (!f.discretization.empty()) c.discretization = f.discretization;
  if (!f.csv.empty()) c.csv_path = f.csv;
  if (!f.svg.empty()) c.svg_path = f.svg;
  if (f.seed) c.seed = *f.seed;
  if (f.no_potential_cost) c.cost_includes_potential = false;
  if (f.trapezoid) c.trapezoid_cost = true;
  apply_environment(c);
  return c;
}

void report_error(std::ostream& err, const std::string& kind, std::string message) {
  for (char& ch : message) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  err << "geodisc: error[" << kind << "]: " << message << std::endl;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discretization maps, their lifts and the symplectic integrators they generate"};
  app.name("geodisc");
  app.require_subcommand(1);
  app.set_help_flag("-h,--help", "print this help");

  Flags flags;
  CLI::App* simulate = app.add_subcommand("simulate", "integrate an initial-value problem");
  add_config_flags(simulate, flags);
  CLI::App* shoot_cmd = app.add_subcommand("shoot", "solve a boundary-value problem by single shooting");
  add_config_flags(shoot_cmd, flags);

  CLI::App* check = app.add_subcommand("check", "run the verification suites");
  add_config_flags(check, flags);
  CheckCommand check_command;
  std::string suites, hs;
  check->add_option("--suite", suites, "comma-separated suites (default: all)");
  check->add_option("--h", hs, "step sizes for the convergence suite, e.g. 0.04,0.02,0.01");
  check->add_option("--json", check_command.json_path, "also write the JSON report here");

  CLI::App* plot = app.add_subcommand("plot", "plot the xy trajectory of a CSV file as SVG");
  plot->set_help_flag("--help", "print this help");
  PlotCommand plot_command;
  std::string plot_center;
  plot->add_option("csv", plot_command.csv_path, "trajectory CSV")->required();
  plot->add_option("svg", plot_command.svg_path, "output SVG")->required();
  plot->add_option("--r", plot_command.r, "obstacle radius");
  plot->add_option("--center", plot_center, "obstacle center x,y");

  // CLI11 wants argv-style input; args[0] is the program name.
  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what());
    return kExitConfig;
  }

  try {
    if (check->parsed()) {
      if (!suites.empty()) {
        std::stringstream ss(suites);
        std::string s;
        while (std::getline(ss, s, ',')) check_command.suites.push_back(s);
      }
      if (!hs.empty()) check_command.convergence_h = parse_list(hs, "h");
      return cmd_check(build_config(flags), check_command, out);
    }
    if (plot->parsed()) {
      if (!plot_center.empty()) plot_command.center = parse_list(plot_center, "center");
      return cmd_plot(plot_command, out);
    }
    if (simulate->parsed()) return cmd_simulate(build_config(flags), out);
    return cmd_shoot(build_config(flags), out);
  } catch (const ConfigError& e) {
    report_error(err, "Config", e.what());
    return kExitConfig;
  } catch (const InputError& e) {
    report_error(err, "Input", e.what());
    return kExitConfig;
  } catch (const BadDiscretization& e) {
    report_error(err, e.kind(), e.what());
    return kExitConfig;
  } catch (const StartInsideObstacle& e) {
    report_error(err, e.kind(), e.what());
    return kExitConfig;
  } catch (const DimensionMismatch& e) {
    report_error(err, e.kind(), e.what());
    return kExitConfig;
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    report_error(err, "Runtime", e.what());
    return kExitFailure;
  }
}

}  // namespace geodisc::app
