#pragma once
// Newton iteration with an iteratively regularized Landweber inner loop in
// L^p/L^r, with the unified parameter rules for the step size omega, the
// regularization weight alpha and the inner/outer stopping indices.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nirlw/banach.hpp"
#include "nirlw/forward_operator.hpp"
#include "nirlw/grid_function.hpp"

namespace nirlw {

/// Summable weights a_n controlling the inner budget k_n = floor(a_n r_n^-r).
struct SummableSequence {
  enum class Kind { shifted_power, geometric, constant_k };
  Kind kind = Kind::shifted_power;
  double shift = 50.0;     // (shift + n)^-exponent
  double exponent = 2.0;
  double ratio = 0.5;      // ratio^n
  long constant_k = 3;     // k_n = constant_k

  static SummableSequence shifted_power(double shift, double exponent) {
    return {Kind::shifted_power, shift, exponent, 0.5, 3};
  }
  static SummableSequence geometric(double ratio) { return {Kind::geometric, 50.0, 2.0, ratio, 3}; }
  static SummableSequence constant(long k) { return {Kind::constant_k, 50.0, 2.0, 0.5, k}; }

  double operator()(int n) const;
  void validate() const;
};

struct Budgets {
  int max_outer = 200;
  long max_inner = 100000;             // per outer step
  long max_total_inner = 10'000'000;   // whole run
};

struct SolverConfig {
  SpaceParams space = SpaceParams::lebesgue(2.0, 2.0);
  double delta = 0.0;
  double tau = 1.02;
  double tau_tilde = 0.1;
  double c_alpha = 1.0;
  double eta = 0.1;
  double nu = 0.0;
  double omega_bar = 5000.0;
  double c_omega = 0.1;
  std::optional<double> vartheta;  // nullopt: pick 2^-j automatically
  double q = 0.9;
  double rho = 1.0;
  double c_const = 0.03;  // C_{p*,s*}
  SummableSequence a_seq = SummableSequence::shifted_power(50.0, 2.0);
  double alpha00 = 1.0;
  Budgets budgets;
  int eval_stride = 1;
  bool rate_mode = false;
  bool diagnostics = false;

  double theta() const;
  /// The configured vartheta, or the automatic choice.
  double resolved_vartheta() const;
  /// Throws ConfigError on violated invariants; returns warnings.
  std::vector<std::string> validate() const;
};

// ---- parameter rules -------------------------------------------------------

/// theta = 4 nu / (r (1 + 2 nu) - 4 nu).
double theta_exponent(double nu, double r);

/// Largest 2^-j (j = 0..64) with phi(vartheta)/vartheta-type bound <= c_omega.
double choose_vartheta(double c_omega, double c_const, double rho, double p, double p_star,
                       double s_star);

struct OmegaChoice {
  double omega = 0.0;
  bool degenerate = false;  // t_tilde == 0: omega fell back to vartheta * omega_bar
};
OmegaChoice choose_omega(double t, double t_tilde, double vartheta, double omega_bar,
                         const SpaceParams& space);

/// tau_tilde (t + eta r_n + (1 + eta) delta)^(r / (1 + theta)).
double alpha_check(double t, double r_n, double eta, double delta, double tau_tilde, double r,
                   double theta);

/// alpha_prev (1 - (1 - q) alpha_prev)^(1/theta); zero when theta == 0.
double alpha_hat(double alpha_prev, double q, double theta);

/// min(1, max(alpha_check(t_next), alpha_hat(alpha_prev))).
double next_alpha(double alpha_prev, double t_next, double r_n, const SolverConfig& config);

/// r_n <= tau delta.
bool outer_stop(double r_n, double tau, double delta);

/// max(1, floor(a_n r_n^-r)), capped by the per-outer budget.
long inner_index(int n, double r_n, const SolverConfig& config);

// ---- iteration state and log -----------------------------------------------

enum class Phase { newton, refinement };

struct IterationRecord {
  int n = 0;
  long k = 0;
  double t = 0.0;        // ||A_n (z - x_n) + F(x_n) - y||_r at z_{n,k}
  double t_tilde = 0.0;  // ||A_n^* j_r(.)||_{p*}
  double omega = 0.0;
  double alpha = 0.0;    // alpha_{n,k} used in this step
  double alpha_next = 0.0;  // alpha_{n,k+1} produced by this step
  double r_n = 0.0;
  bool degenerate = false;
  Phase phase = Phase::newton;
  std::optional<double> f_residual;  // ||F(z_{n,k+1}) - y||_r when it was evaluated
  std::optional<double> d2;          // shifted Bregman distance of the truth from z_{n,k}
  std::optional<double> gamma;       // d2 alpha^-theta
};

enum class InnerStopReason { none, index_reached, inner_discrepancy, inner_budget };
std::string_view to_string(InnerStopReason reason);

struct OuterRecord {
  int n = 0;
  double r_n = 0.0;
  long k_budget = 0;  // k_n from the summable sequence
  long steps = 0;     // inner steps actually taken
  InnerStopReason reason = InnerStopReason::none;
};

struct IterationLog {
  std::vector<IterationRecord> records;
  std::vector<OuterRecord> outer;

  /// Inner steps of the Newton phase, sum of k_n.
  long newton_steps() const;
};

/// Quantities of one outer step n together with the inner iterate z_{n,k}.
struct IterationState {
  int n = 0;
  long k = 0;
  GridFunction x0;
  GridFunction x;          // x_n
  GridFunction z;          // z_{n,k}
  GridFunction u_dual;     // u_{n,k}
  GridFunction base_dual;  // J_p(x_n - x0)
  double alpha = 1.0;      // alpha_{n,k}
  double r_n = 0.0;
  std::shared_ptr<const Linearization> lin;  // F'(x_n), F(x_n)
  GridFunction base_residual;                // F(x_n) - y
  GridFunction lin_residual;                 // A_n (z - x_n) + F(x_n) - y
  double t = 0.0;                            // ||lin_residual||_r

  /// x0 + J_{p*}(base_dual + u_dual); equals z up to rounding.
  GridFunction recompute_z(double p) const;
};

/// Linearizes at x and sets up u = 0, z = x, alpha = alpha_start.
IterationState begin_outer(const ForwardOperator& op, const GridFunction& y, const GridFunction& x0,
                           const GridFunction& x, int n, double alpha_start,
                           const SolverConfig& config);

/// One Landweber step z_{n,k} -> z_{n,k+1}. Throws NonFiniteValue if the
/// update leaves the finite range.
IterationRecord inner_step(IterationState& state, const SolverConfig& config, double vartheta,
                           const GridFunction* truth = nullptr);

struct InnerStopDecision {
  bool stop = false;
  InnerStopReason reason = InnerStopReason::none;
  std::optional<double> f_residual;
};

/// Stop when k reaches k_n or, every eval_stride steps, ||F(z) - y|| <= tau delta.
InnerStopDecision inner_stop(const IterationState& state, long k_n, const ForwardOperator& op,
                             const GridFunction& y, const SolverConfig& config);

enum class Termination {
  discrepancy,
  outer_budget,
  total_budget,
  operator_not_invertible,
  non_finite,
  refinement_budget,
  invalid_config,
};
std::string_view to_string(Termination reason);

struct RunResult {
  GridFunction solution;
  IterationLog log;
  Termination reason = Termination::outer_budget;
  std::string message;
  int n_star = 0;
  long total_inner = 0;  // N_p
  double final_residual = 0.0;
  std::optional<double> final_alpha;     // alpha at the returned refinement iterate
  std::optional<double> previous_alpha;  // alpha one step before it
  std::vector<std::string> warnings;

  bool ok() const { return reason == Termination::discrepancy; }
};

/// Continues the inner loop at n* until alpha <= C_alpha (r_n* + delta)^(r/(1+theta)).
/// Returns z at that k. Throws BudgetExhausted when the criterion cannot be reached
/// within the inner budget.
GridFunction final_refinement(IterationState& state, const SolverConfig& config, double vartheta, IterationLog& log,
                              const GridFunction* truth, std::optional<double>& final_alpha,
                              std::optional<double>& previous_alpha);

/// Full run from x0 (which also serves as the starting iterate). Errors are
/// reported through RunResult::reason, never thrown.
RunResult run(const ForwardOperator& op, const GridFunction& y, const GridFunction& x0,
              const SolverConfig& config, const GridFunction* truth = nullptr);

}  // namespace nirlw
