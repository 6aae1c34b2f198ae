#include "nirlw/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "nirlw/errors.hpp"
#include "nirlw/noise.hpp"

namespace nirlw {
namespace {

double indicator(double t, double lo, double hi) { return (t >= lo && t <= hi) ? 1.0 : 0.0; }

ExperimentSpec peaks_1d(const std::string& name, double p, int n, bool third_peak) {
  const GridDomain d = GridDomain::line(n);
  ExperimentSpec s;
  s.name = name;
  s.truth = GridFunction::sample(d, [third_peak](double t) {
    double c = 0.5 * indicator(t, 0.3, 0.4) + 1.0 * indicator(t, 0.6, 0.7);
    if (third_peak) c += 0.25 * indicator(t, 0.1, 0.15);
    return c;
  });
  s.exact_state = GridFunction::sample(d, [](double t) { return 1.0 + 5.0 * t; });
  s.problem = {d, hadamard(s.exact_state, s.truth), BoundaryData::line(1.0, 6.0)};
  s.initial_guess = GridFunction(d, 0.0);
  s.noise = {NoiseSpec::Kind::gaussian, 1e-4, 0, std::nullopt, std::nullopt};

  SolverConfig& c = s.config;
  c.space = SpaceParams::lebesgue(p, 2.0);
  c.delta = 1e-4;
  c.tau = 1.02;
  c.c_omega = 0.1;
  return s;
}

}  // namespace

void ExperimentSpec::validate() const {
  problem.validate();
  require_same_domain(truth, problem.rhs, "experiment truth");
  require_same_domain(exact_state, problem.rhs, "experiment state");
  require_same_domain(initial_guess, problem.rhs, "experiment initial guess");
  if (!(noise.delta >= 0.0)) throw ConfigError("noise delta must be >= 0");
  config.validate();
}

ExperimentSpec make_example1(double p, int n) {
  ExperimentSpec s = peaks_1d(p == 2.0 ? "example1_p2" : "example1", p, n, false);
  s.config.tau_tilde = 0.1;
  s.config.a_seq = SummableSequence::shifted_power(50.0, 2.0);
  return s;
}

ExperimentSpec make_example2(double p, int n) {
  ExperimentSpec s = peaks_1d(p == 2.0 ? "example2_p2" : "example2", p, n, true);
  s.config.tau_tilde = 0.01;
  s.config.a_seq = SummableSequence::shifted_power(100.0, 2.0);
  return s;
}

ExperimentSpec make_example3(double tau, double r, int n) {
  const GridDomain d = GridDomain::line(n);
  ExperimentSpec s;
  s.name = "example3";
  s.truth = GridFunction::sample(
      d, [](double t) { return 2.0 - t + 4.0 * std::sin(2.0 * std::numbers::pi * t); });
  s.exact_state = GridFunction::sample(d, [](double t) { return 1.0 - 2.0 * t; });
  s.problem = {d, hadamard(s.exact_state, s.truth), BoundaryData::line(1.0, -1.0)};
  s.initial_guess = GridFunction::sample(d, [](double t) { return 2.0 - t; });
  // The Gaussian level is not part of the published setup; 1e-3 keeps the
  // outliers dominant.
  s.noise = {NoiseSpec::Kind::gaussian_outliers, 1e-3, 5, std::nullopt, std::nullopt};

  SolverConfig& c = s.config;
  c.space = SpaceParams::lebesgue(2.0, r);
  c.tau = tau;
  c.tau_tilde = 5e-3;
  c.a_seq = SummableSequence::shifted_power(1.0, 1.1);
  c.c_omega = 5e-3;
  return s;
}

ExperimentSpec make_example2d(double delta, double r, int n, int m) {
  const GridDomain d = GridDomain::square(n, m);
  ExperimentSpec s;
  s.name = "example2d";
  s.truth = GridFunction::sample(d, [](double x, double y) {
    return 40.0 * indicator(x, 0.19, 0.24) * indicator(y, 0.19, 0.24);
  });
  auto u = [](double x, double y) { return 1.0 + x + y; };
  s.exact_state = GridFunction::sample(d, u);
  s.problem = {d, hadamard(s.exact_state, s.truth), BoundaryData::trace(d, u)};
  s.initial_guess = GridFunction(d, 0.0);
  s.noise = {NoiseSpec::Kind::gaussian, delta, 0, std::nullopt, std::nullopt};

  SolverConfig& c = s.config;
  c.space = SpaceParams::lebesgue(1.1, r);
  c.delta = delta;
  c.tau = 1.0 + 1e-5;
  c.tau_tilde = 1e-4;
  c.c_omega = 0.1;
  // The unclamped step rule scales like t^r / t_tilde^s, which for r = 10
  // reaches ~1e17; a 1D-sized cap would freeze the r = 10 run near the
  // discrepancy level.
  c.omega_bar = 1e20;
  return s;
}

std::vector<std::string> preset_names() { return {"example1", "example2", "example3", "example2d"}; }

ExperimentSpec make_preset(const std::string& name, std::optional<int> n, std::optional<int> m) {
  if (name == "example1") return make_example1(1.1, n.value_or(400));
  if (name == "example2") return make_example2(1.1, n.value_or(400));
  if (name == "example3") return make_example3(1.0 + 1e-5, 1.1, n.value_or(400));
  if (name == "example2d") return make_example2d(1e-3, 2.0, n.value_or(30), m.value_or(n.value_or(30)));
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<ExperimentSpec> preset_variants(const std::string& name) {
  if (name == "example1") return {make_example1(1.1), make_example1(2.0)};
  if (name == "example2") return {make_example2(1.1), make_example2(2.0)};
  if (name == "example3") {
    auto a = make_example3(1.0015);
    a.name = "example3_tau1.0015";
    auto b = make_example3(1.0 + 1e-5);
    b.name = "example3_tau1.00001";
    return {a, b};
  }
  if (name == "example2d") {
    auto a = make_example2d(1e-3, 2.0);
    a.name = "example2d_d1e-3_r2";
    auto b = make_example2d(1e-2, 2.0);
    b.name = "example2d_d1e-2_r2";
    auto c = make_example2d(1e-2, 10.0);
    c.name = "example2d_d1e-2_r10";
    return {a, b, c};
  }
  throw ConfigError("unknown preset '" + name + "'");
}

ErrorNorms compute_error(const GridFunction& reconstruction, const GridFunction& truth, double p) {
  require_same_domain(reconstruction, truth, "compute_error");
  const GridFunction e = reconstruction - truth;
  return {lp_norm(e, 2.0), lp_norm(e, p)};
}

NoisyData make_data(const ExperimentSpec& spec) {
  const double r = spec.config.space.r;
  const double noise_r = spec.noise.norm_exponent.value_or(r);
  GridFunction y = generate_noise(spec.exact_state, spec.noise.delta, noise_r, spec.seed);
  if (spec.noise.kind == NoiseSpec::Kind::gaussian_outliers) {
    double peak = 0.0;
    for (double v : spec.exact_state.values()) peak = std::max(peak, std::fabs(v));
    const double mag = spec.noise.outlier_magnitude.value_or(0.5 * peak);
    y = add_outliers(y, spec.noise.outlier_count, mag, spec.seed);
  }
  if (spec.noise.kind == NoiseSpec::Kind::gaussian && noise_r == r)
    return {y, spec.noise.delta};
  return {y, lp_norm(y - spec.exact_state, r)};
}

RunReport run_experiment(const ExperimentSpec& spec) {
  RunReport rep;
  rep.name = spec.name;
  rep.p = spec.config.space.p;
  rep.r = spec.config.space.r;
  rep.seed = spec.seed;

  const auto start = std::chrono::steady_clock::now();
  try {
    spec.validate();
  } catch (const Error& e) {
    rep.reason = Termination::invalid_config;
    rep.message = e.what();
    rep.reconstruction = spec.initial_guess;
    return rep;
  }
  NoisyData noisy = make_data(spec);
  rep.data = noisy.data;
  rep.delta = noisy.noise_norm;

  SolverConfig config = spec.config;
  config.delta = noisy.noise_norm;
  const EllipticForward op(spec.problem);
  RunResult res = run(op, noisy.data, spec.initial_guess, config, &spec.truth);

  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  rep.reconstruction = res.solution;
  rep.error = compute_error(res.solution, spec.truth, config.space.p);
  rep.n_star = res.n_star;
  rep.total_inner = res.log.newton_steps();
  rep.final_residual = res.final_residual;
  rep.reason = res.reason;
  rep.message = res.message;
  rep.log = std::move(res.log);
  rep.warnings = std::move(res.warnings);
  rep.final_alpha = res.final_alpha;
  rep.previous_alpha = res.previous_alpha;
  return rep;
}

}  // namespace nirlw
