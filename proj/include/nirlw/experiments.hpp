#pragma once
// Synthetic coefficient-identification experiments: exact coefficient,
// state, data generation and the solver configuration of each preset.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nirlw/elliptic.hpp"
#include "nirlw/solver.hpp"

namespace nirlw {

struct NoiseSpec {
  enum class Kind { gaussian, gaussian_outliers };
  Kind kind = Kind::gaussian;
  double delta = 0.0;  // L^r norm of the Gaussian part
  int outlier_count = 5;
  std::optional<double> outlier_magnitude;  // default 0.5 ||u||_inf
  /// Exponent of the norm in which `delta` is measured; defaults to the
  /// solver's r. Setting it lets runs with different r share one data set.
  std::optional<double> norm_exponent;
};

struct ExperimentSpec {
  std::string name;
  EllipticProblem problem;
  GridFunction truth;          // c-dagger
  GridFunction exact_state;    // u(c-dagger)
  GridFunction initial_guess;  // x0
  SolverConfig config;
  NoiseSpec noise;
  std::uint64_t seed = 1;

  /// delta >= 0, grids agree, config valid.
  void validate() const;
};

/// Piecewise-constant double peak on (0,1), N = 400 interior nodes.
ExperimentSpec make_example1(double p = 1.1, int n = 400);
/// Example 1 plus a 0.25 plateau on [0.1, 0.15].
ExperimentSpec make_example2(double p = 1.1, int n = 400);
/// Smooth coefficient with Gaussian noise plus outliers, p = 2, r = 1.1.
ExperimentSpec make_example3(double tau = 1.0 + 1e-5, double r = 1.1, int n = 400);
/// 40 on [0.19, 0.24]^2 on a 30 x 30 grid, p = 1.1.
ExperimentSpec make_example2d(double delta = 1e-3, double r = 2.0, int n = 30, int m = 30);

/// Names accepted by make_preset: example1, example2, example3, example2d.
std::vector<std::string> preset_names();
ExperimentSpec make_preset(const std::string& name, std::optional<int> n = std::nullopt,
                           std::optional<int> m = std::nullopt);
/// The variants a preset reports on (p = 1.1 / 2, tau values, noise levels).
std::vector<ExperimentSpec> preset_variants(const std::string& name);

struct ErrorNorms {
  double l2 = 0.0;
  double lp = 0.0;
};
ErrorNorms compute_error(const GridFunction& reconstruction, const GridFunction& truth, double p);

struct NoisyData {
  GridFunction data;
  double noise_norm = 0.0;  // ||data - u|| in the solver's L^r, the delta it is given
};
NoisyData make_data(const ExperimentSpec& spec);

struct RunReport {
  std::string name;
  double p = 0.0;
  double r = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  GridFunction reconstruction;
  GridFunction data;
  ErrorNorms error;
  int n_star = 0;
  long total_inner = 0;  // N_p
  double wall_ms = 0.0;
  double final_residual = 0.0;
  Termination reason = Termination::outer_budget;
  std::string message;
  IterationLog log;
  std::vector<std::string> warnings;
  std::optional<double> final_alpha;
  std::optional<double> previous_alpha;

  bool ok() const { return reason == Termination::discrepancy; }
};

/// Builds the data, runs the solver and measures errors. Deterministic for a
/// given spec (including its seed).
RunReport run_experiment(const ExperimentSpec& spec);

}  // namespace nirlw
