#include "geodisc/app/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "geodisc/app/config.hpp"
#include "geodisc/discretization.hpp"
#include "geodisc/integrator.hpp"
#include "geodisc/lifts.hpp"
#include "geodisc/optimal_control.hpp"
#include "geodisc/reference_maps.hpp"

namespace geodisc::app {

namespace {

using Rng = std::mt19937_64;

Vector uniform(Rng& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

Vector unit_vector(Rng& rng) {
  Vector v;
  do {
    v = uniform(rng, 3, -1.0, 1.0);
  } while (v.norm() < 0.2);
  return v.normalized();
}

std::string join(const std::string& a, int n) { return a + " n=" + std::to_string(n); }

class Recorder {
 public:
  Recorder(std::string suite, std::vector<CheckEntry>& out) : suite_(std::move(suite)), out_(out) {}

  void check(const std::string& name, double defect, double tol, std::string detail = {}) {
    const bool ok = std::isfinite(defect) && defect <= tol;
    out_.push_back({suite_, name, ok ? CheckStatus::kPass : CheckStatus::kFail, defect, tol,
                    std::move(detail)});
  }
  void info(const std::string& name, double defect, double tol, std::string detail) {
    out_.push_back({suite_, name, CheckStatus::kInfo, defect, tol, std::move(detail)});
  }
  void failure(const std::string& name, const std::string& what) {
    out_.push_back({suite_, name, CheckStatus::kFail, std::nan(""), 0.0, what});
  }

 private:
  std::string suite_;
  std::vector<CheckEntry>& out_;
};

void suite_example3(Rng& rng, Recorder& rec) {
  for (int n : {1, 3}) {
    const CotangentLiftedMap generic = cotangent_lift(midpoint_map(n));
    const CotangentLiftedMap closed = reference::midpoint_cotangent(n);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const Vector x = uniform(rng, 4 * n, -2.0, 2.0);
      worst = std::max(worst, (generic.forward_flat(x) - closed.forward_flat(x)).lpNorm<Eigen::Infinity>());
    }
    rec.check(join("cotangent_lift(midpoint) vs closed form", n), worst, 1e-12);

    const CotangentLiftedMap lifted = lifted_cotangent_map(midpoint_map(n));
    const CotangentLiftedMap lifted_closed = reference::lifted_midpoint_on_tstar_tq(n);
    worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const Vector x = uniform(rng, 8 * n, -2.0, 2.0);
      worst = std::max(worst, (lifted.forward_flat(x) - lifted_closed.forward_flat(x)).lpNorm<Eigen::Infinity>());
    }
    rec.check(join("lifted midpoint on T*(TQ) vs closed form", n), worst, 1e-12);
  }
}

void suite_second_lift(Rng& rng, Recorder& rec) {
  for (int n : {1, 3}) {
    for (auto [method, label, tol] :
         {std::tuple{JetMethod::kTaylor, "exact", 1e-9},
          std::tuple{JetMethod::kFiniteDifference, "finite differences", 1e-6}}) {
      const DiscretizationMap lift = higher_order_lift(midpoint_map(n), 2, method).as_map();
      double worst = 0.0;
      for (int s = 0; s < 20; ++s) {
        const Vector x = uniform(rng, 6 * n, -2.0, 2.0);
        const PointPair out = lift.forward(x.head(3 * n), x.tail(3 * n));
        worst = std::max(worst, (concat(out.minus, out.plus) - reference::midpoint_second_lift(x, n))
                                    .lpNorm<Eigen::Infinity>());
      }
      rec.check(join(std::string("R^(2) midpoint closed form, ") + label, n), worst, tol);
    }

    // Fiber derivatives at the zero section: -Id/2 for the left jet, +Id/2 for the right.
    const DiscretizationMap lift = higher_order_lift(midpoint_map(n), 2).as_map();
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
      const Vector z = uniform(rng, 3 * n, -2.0, 2.0);
      const Matrix D = jacobian_fd(
          [&](const Vector& v) { return lift.forward_map()(concat(z, v)); }, Vector::Zero(3 * n));
      const Matrix half = 0.5 * Matrix::Identity(3 * n, 3 * n);
      worst = std::max({worst, (D.topRows(3 * n) + half).lpNorm<Eigen::Infinity>(),
                        (D.bottomRows(3 * n) - half).lpNorm<Eigen::Infinity>()});
    }
    rec.check(join("R^(2) tangent blocks at the fiber origin are -Id/2 and Id/2", n), worst, 1e-7);
  }
}

void suite_axioms(Rng& rng, Recorder& rec) {
  const double tol = 1e-7;
  auto run = [&](const std::string& name, const DiscretizationMap& map,
                 const std::function<Vector()>& sample, int count) {
    std::vector<Vector> points;
    for (int i = 0; i < count; ++i) points.push_back(sample());
    const AxiomReport report = verify_discretization_axioms(map, points, tol);
    rec.check(name, report.max_defect(), tol);
  };
  auto euclid = [&](int n) { return [&rng, n] { return uniform(rng, n, -3.0, 3.0); }; };

  run("midpoint", midpoint_map(3), euclid(3), 100);
  for (double theta : {0.0, 0.25, 0.5, 1.0}) {
    std::ostringstream name;
    name << "theta=" << theta;
    run(name.str(), theta_map(3, theta), euclid(3), 50);
  }
  run("sphere initial point", sphere_initial_point_map(), [&] { return unit_vector(rng); }, 50);
  run("sphere geodesic midpoint", sphere_geodesic_midpoint_map(), [&] { return unit_vector(rng); }, 50);
  run("se2 exp", se2_exp_map(), [&] {
        Vector g = uniform(rng, 3, -3.0, 3.0);
        g[2] = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
        return g;
      }, 50);
  for (int n : {1, 2}) {
    run(join("cotangent lift of lifted midpoint on T*(TQ)", n),
        lifted_cotangent_map(midpoint_map(n)).as_map(), euclid(4 * n), 20);
  }
}

void suite_symplectomorphism(Rng& rng, Recorder& rec) {
  for (int n : {1, 3}) {
    std::vector<Vector> samples;
    for (int s = 0; s < 100; ++s) samples.push_back(uniform(rng, 8 * n, -2.0, 2.0));
    const SymplecticReport report =
        check_symplectomorphism(lifted_cotangent_map(midpoint_map(n)), samples, 1e-6);
    rec.check(join("lifted midpoint on T*(TQ)", n), report.max_defect(), report.tolerance);
  }
  // Negative control: scaling p1 by 1.1 must break the identity.
  const CotangentLiftedMap C = lifted_cotangent_map(midpoint_map(1));
  auto perturbed = [&C](const Vector& x) {
    Vector y = C.forward_flat(x);
    y[3] *= 1.1;
    return y;
  };
  const SymplecticReport bad = check_symplectomorphism(perturbed, 2, {uniform(rng, 8, -2.0, 2.0)}, 1e-6);
  rec.check("negative control detects a perturbed map", bad.max_defect() >= 0.05 ? 0.0 : 1.0, 0.0,
            "defect of perturbed map " + std::to_string(bad.max_defect()));
}

void suite_step_symplecticity(Rng& rng, Recorder& rec) {
  const double h = 0.01;
  const int n = 2;
  Obstacle obstacle;
  obstacle.tau = 1.0;
  obstacle.r = 1.0;
  const CotangentLiftedMap C = lifted_cotangent_map(midpoint_map(n));
  const Matrix Omega = canonical_form(2 * n);
  for (auto [label, V] : {std::pair{"free", Potential::zero(n)},
                          std::pair{"obstacle", obstacle_potential(n, obstacle)}}) {
    const HamiltonianSystem H = second_order_hamiltonian(n, V);
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      Vector z = uniform(rng, 4 * n, -1.0, 1.0);
      const double radius = std::uniform_real_distribution<double>(2.0, 3.0)(rng);
      const double angle = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
      z[0] = radius * std::cos(angle);
      z[1] = radius * std::sin(angle);
      const Matrix M = jacobian_fd([&](const Vector& x) { return symplectic_step(C, H, h, x); }, z);
      worst = std::max(worst, (M.transpose() * Omega * M - Omega).lpNorm<Eigen::Infinity>());
    }
    rec.check(std::string(label) + " Hamiltonian, h=0.01", worst, 1e-6);
  }
}

void suite_free_spline(Recorder& rec) {
  const CotangentLiftedMap C = lifted_cotangent_map(midpoint_map(1));
  const HamiltonianSystem H = second_order_hamiltonian(1, Potential::zero(1));

  // The one-step example and the closed-form explicit update.
  const double h = 0.1;
  const Vector z0 = (Vector(4) << 0.0, 1.0, 2.0, 3.0).finished();
  const Vector z1 = symplectic_step(C, H, h, z0);
  const Vector expected = (Vector(4) << 0.1145, 1.29, 2.0, 2.8).finished();
  rec.check("one step from (0,1,2,3), h=0.1", (z1 - expected).lpNorm<Eigen::Infinity>(), 1e-10);

  auto explicit_update = [&](double sign) {
    const double q = z0[0], qd = z0[1], p0 = z0[2], p1 = z0[3];
    return (Vector(4) << q + h * qd + h * h / 2 * p1 + sign * h * h * h / 4 * p0,
            qd + h * p1 + sign * h * h / 2 * p0, p0, p1 - h * p0)
        .finished();
  };
  rec.check("explicit update eliminated from the implicit scheme",
            (z1 - explicit_update(-1.0)).lpNorm<Eigen::Infinity>(), 1e-10);
  rec.info("explicit update with + signs on the p0 terms (as printed)",
           (z1 - explicit_update(+1.0)).lpNorm<Eigen::Infinity>(), 1e-10,
           "differs from the implicit scheme; the minus-sign form is the consistent one");

  // Long run from a moderately scaled state.
  const SecondOrderState init{Vector::Zero(1), Vector::Ones(1), Vector::Constant(1, 0.002),
                              Vector::Constant(1, 0.1)};
  const Trajectory traj = integrate(C, H, 0.01, 10000, init);
  double p0_drift = 0.0, H_drift = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    p0_drift = std::max(p0_drift, std::abs(traj.states[k].p0[0] - init.p0[0]));
    H_drift = std::max(H_drift, std::abs(traj.H[k] - traj.H[0]));
  }
  rec.check("p0 drift over 1e4 steps", p0_drift, 1e-12);
  rec.check("H drift over 1e4 steps", H_drift, 1e-10);
}

// Exact flow of the free second-order Hamilton equations.
Vector free_flow(const Vector& z, double t) {
  const double q = z[0], qd = z[1], p0 = z[2], p1 = z[3];
  return (Vector(4) << q + qd * t + p1 * t * t / 2 - p0 * t * t * t / 6,
          qd + p1 * t - p0 * t * t / 2, p0, p1 - p0 * t)
      .finished();
}

void suite_convergence(const std::vector<double>& hs, Recorder& rec) {
  if (hs.size() < 2) throw ConfigError("convergence suite needs at least two step sizes");
  const CotangentLiftedMap C = lifted_cotangent_map(midpoint_map(1));
  const HamiltonianSystem H = second_order_hamiltonian(1, Potential::zero(1));
  const Vector z0 = (Vector(4) << 0.0, 1.0, 2.0, 3.0).finished();
  const double T = 1.0;
  std::vector<double> errors;
  for (double h : hs) {
    const int N = static_cast<int>(std::lround(T / h));
    if (N < 1 || std::abs(N * h - T) > 1e-9) throw ConfigError("step sizes must divide T = 1");
    const Trajectory traj = integrate(C, H, h, N, SecondOrderState::from_flat(z0, 1));
    errors.push_back((traj.states.back().flat() - free_flow(z0, T)).lpNorm<Eigen::Infinity>());
  }
  for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
    const double order = std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]);
    std::ostringstream name, detail;
    name << "observed order h=" << hs[i] << " -> " << hs[i + 1];
    detail << "order " << order << ", errors " << errors[i] << " -> " << errors[i + 1];
    rec.check(name.str(), std::abs(order - 2.0), 0.1, detail.str());
  }
}

void suite_sphere_lift(Rng& rng, Recorder& rec) {
  const HigherOrderDiscretizationMap lift =
      higher_order_lift(sphere_initial_point_map(), 2, JetMethod::kTaylor);
  const SmoothMap& R = lift.base().forward_map();
  double oracle = 0.0, closed = 0.0, printed = 0.0;
  for (int s = 0; s < 50; ++s) {
    const Curve gamma = sphere_tangent_curve(unit_vector(rng), uniform(rng, 3, -0.5, 0.5),
                                             uniform(rng, 3, -0.5, 0.5), uniform(rng, 3, -0.8, 0.8),
                                             uniform(rng, 3, -0.5, 0.5), uniform(rng, 3, -0.5, 0.5));
    const Jet tq = jet_of_curve(gamma, 2, DerivativeBackend::kTaylor);
    const JetTangent x = phi_k_inverse(tq);
    const auto [minus, plus] = lift.forward(x);
    const Vector lifted = concat(minus.flatten(), plus.flatten());

    const Curve image(6, [&](double t) { return R(gamma(t)); });
    const Jet oracle_jet = jet_of_curve(image, 2, DerivativeBackend::kFiniteDifference);
    Vector expected(18);
    for (int r = 0; r <= 2; ++r) {
      expected.segment(3 * r, 3) = oracle_jet[r].head(3);
      expected.segment(9 + 3 * r, 3) = oracle_jet[r].tail(3);
    }
    oracle = std::max(oracle, (lifted - expected).lpNorm<Eigen::Infinity>());

    for (bool as_printed : {false, true}) {
      const auto [a, b] = reference::sphere_initial_point_second_lift(
          x.base[0], x.fiber[0], x.base[1], x.fiber[1], x.base[2], x.fiber[2], as_printed);
      const double d = (lifted - concat(a.flatten(), b.flatten())).lpNorm<Eigen::Infinity>();
      (as_printed ? printed : closed) = std::max(as_printed ? printed : closed, d);
    }
  }
  rec.check("T^(2) lift vs jet-of-curve oracle (finite differences)", oracle, 1e-7);
  rec.check("T^(2) lift vs closed form with squared last term", closed, 1e-9);
  rec.info("T^(2) lift vs closed form as printed (last term linear in xi.xidot)", printed, 1e-7,
           "expected mismatch: differentiating twice gives 3 (xi.xidot)^2 (q+xi)/|q+xi|^5");
}

}  // namespace

Curve sphere_tangent_curve(const Vector& a, const Vector& b, const Vector& c, const Vector& d,
                           const Vector& e, const Vector& f) {
  return Curve::from_kernel(6, [a, b, c, d, e, f](auto t) {
    using S = decltype(t);
    using std::sqrt;
    VecT<S> w(3), u(3);
    for (int i = 0; i < 3; ++i) {
      w[i] = a[i] + t * (b[i] + t * c[i]);
      u[i] = d[i] + t * (e[i] + t * f[i]);
    }
    S norm2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    const S norm = sqrt(norm2);
    for (int i = 0; i < 3; ++i) w[i] = w[i] / norm;
    const S proj = w[0] * u[0] + w[1] * u[1] + w[2] * u[2];
    VecT<S> out(6);
    for (int i = 0; i < 3; ++i) {
      out[i] = w[i];
      out[3 + i] = u[i] - proj * w[i];
    }
    return out;
  });
}

const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names{
      "example3",           "second-lift", "axioms",      "symplectomorphism",
      "step-symplecticity", "free-spline", "convergence", "sphere-lift"};
  return names;
}

std::vector<CheckEntry> run_checks(const CheckOptions& options) {
  const std::vector<std::string>& names = check_suite_names();
  std::vector<std::string> selected = options.suites.empty() ? names : options.suites;
  for (const std::string& s : selected) {
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }

  std::vector<CheckEntry> out;
  for (const std::string& suite : selected) {
    // Each suite draws from its own stream so that selecting suites does
    // not change the samples of the others.
    const auto index = std::find(names.begin(), names.end(), suite) - names.begin();
    Rng rng(options.seed + 7919u * static_cast<std::uint64_t>(index));
    Recorder rec(suite, out);
    try {
      if (suite == "example3") suite_example3(rng, rec);
      else if (suite == "second-lift") suite_second_lift(rng, rec);
      else if (suite == "axioms") suite_axioms(rng, rec);
      else if (suite == "symplectomorphism") suite_symplectomorphism(rng, rec);
      else if (suite == "step-symplecticity") suite_step_symplecticity(rng, rec);
      else if (suite == "free-spline") suite_free_spline(rec);
      else if (suite == "convergence") suite_convergence(options.convergence_h, rec);
      else if (suite == "sphere-lift") suite_sphere_lift(rng, rec);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      rec.failure("suite aborted", e.what());
    }
  }
  return out;
}

bool all_passed(const std::vector<CheckEntry>& entries) {
  return std::none_of(entries.begin(), entries.end(),
                      [](const CheckEntry& e) { return e.status == CheckStatus::kFail; });
}

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kInfo: return "info";
  }
  return "?";
}

nlohmann::json report_json(const std::vector<CheckEntry>& entries, std::uint64_t seed) {
  nlohmann::json results = nlohmann::json::array();
  for (const CheckEntry& e : entries) {
    nlohmann::json j{{"suite", e.suite},
                     {"case", e.name},
                     {"status", status_name(e.status)},
                     {"defect", std::isfinite(e.defect) ? nlohmann::json(e.defect) : nlohmann::json()},
                     {"tolerance", e.tolerance}};
    if (!e.detail.empty()) j["detail"] = e.detail;
    results.push_back(std::move(j));
  }
  return {{"passed", all_passed(entries)}, {"seed", seed}, {"results", results}};
}

}  // namespace geodisc::app
