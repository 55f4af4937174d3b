#include "geodisc/app/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "geodisc/discretization.hpp"

namespace geodisc::app {

ProblemKind parse_problem(const std::string& name) {
  if (name == "free") return ProblemKind::kFree;
  if (name == "obstacle") return ProblemKind::kObstacle;
  if (name == "se2") return ProblemKind::kSE2;
  if (name == "sphere-lift-check") return ProblemKind::kSphereLiftCheck;
  throw ConfigError("unknown problem '" + name + "' (expected free|obstacle|se2|sphere-lift-check)");
}

std::string problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kFree: return "free";
    case ProblemKind::kObstacle: return "obstacle";
    case ProblemKind::kSE2: return "se2";
    case ProblemKind::kSphereLiftCheck: return "sphere-lift-check";
  }
  return "?";
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError(what + ": '" + item + "' is not a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw ConfigError(what + ": '" + item + "' is not a number");
    }
    out.push_back(value);
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

namespace {

std::vector<double> as_list(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return parse_list(v.get<std::string>(), key);
  if (!v.is_array()) throw ConfigError(key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(key + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

template <class T>
T get(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

void apply_json(ExperimentConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known{
      "problem", "n",        "h",        "steps",    "T",     "tau",      "r",
      "center",  "init",     "boundary", "guess",    "discretization",    "tol",
      "cost_includes_potential",         "trapezoid_cost",    "csv",      "svg", "seed"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (j.contains("problem")) c.problem = parse_problem(get<std::string>(j, "problem"));
  if (j.contains("n")) c.n = get<int>(j, "n");
  if (j.contains("h")) c.h = get<double>(j, "h");
  if (j.contains("steps")) c.steps = get<int>(j, "steps");
  if (j.contains("T")) c.T = get<double>(j, "T");
  if (j.contains("tau")) c.tau = get<double>(j, "tau");
  if (j.contains("r")) c.r = get<double>(j, "r");
  if (j.contains("center")) c.center = as_list(j["center"], "center");
  if (j.contains("init")) c.init = as_list(j["init"], "init");
  if (j.contains("boundary")) c.boundary = as_list(j["boundary"], "boundary");
  if (j.contains("guess")) c.guess = as_list(j["guess"], "guess");
  if (j.contains("discretization")) c.discretization = get<std::string>(j, "discretization");
  if (j.contains("tol")) c.tol = get<double>(j, "tol");
  if (j.contains("cost_includes_potential")) {
    c.cost_includes_potential = get<bool>(j, "cost_includes_potential");
  }
  if (j.contains("trapezoid_cost")) c.trapezoid_cost = get<bool>(j, "trapezoid_cost");
  if (j.contains("csv")) c.csv_path = get<std::string>(j, "csv");
  if (j.contains("svg")) c.svg_path = get<std::string>(j, "svg");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  ExperimentConfig c;
  apply_json(c, j);
  return c;
}

void apply_environment(ExperimentConfig& c) {
  if (const char* seed = std::getenv("GEODISC_SEED")) {
    try {
      std::size_t used = 0;
      c.seed = std::stoull(seed, &used);
      if (seed[used] != '\0') throw std::invalid_argument(seed);
    } catch (const std::exception&) {
      throw ConfigError(std::string("GEODISC_SEED is not an unsigned integer: ") + seed);
    }
  }
}

int resolve_dim(const ExperimentConfig& c) {
  if (c.n) {
    if (*c.n < 1) throw ConfigError("n must be at least 1");
    return *c.n;
  }
  if (c.problem == ProblemKind::kSE2) return 3;
  for (const auto* data : {&c.init, &c.boundary}) {
    if (*data) {
      if ((*data)->size() % 4 != 0) throw ConfigError("state data must hold 4n values");
      return static_cast<int>((*data)->size() / 4);
    }
  }
  return c.problem == ProblemKind::kObstacle ? 2 : 1;
}

CotangentLiftedMap make_integrator_map(const std::string& discretization, int n) {
  if (discretization == "midpoint") return lifted_cotangent_map(midpoint_map(n));
  const std::string prefix = "theta:";
  if (discretization.rfind(prefix, 0) == 0) {
    const std::vector<double> theta = parse_list(discretization.substr(prefix.size()), "theta");
    if (theta.size() != 1 || !(theta[0] >= 0.0 && theta[0] <= 1.0)) {
      throw ConfigError("theta must be a single value in [0, 1]");
    }
    return lifted_cotangent_map(theta_map(n, theta[0]));
  }
  throw ConfigError("unknown discretization '" + discretization + "' (expected midpoint|theta:<value>)");
}

std::optional<Obstacle> make_obstacle(const ExperimentConfig& c) {
  if (c.problem != ProblemKind::kObstacle && c.problem != ProblemKind::kSE2) return std::nullopt;
  if (c.center.size() != 2) throw ConfigError("center must have two entries");
  if (!(c.r > 0.0)) throw ConfigError("r must be positive");
  Obstacle o;
  o.tau = c.tau;
  o.r = c.r;
  o.center = Vector::Map(c.center.data(), 2);
  return o;
}

}  // namespace geodisc::app
