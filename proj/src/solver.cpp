#include "nirlw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nirlw/errors.hpp"

namespace nirlw {

// ---- SummableSequence / SolverConfig ------------------------------------------

double SummableSequence::operator()(int n) const {
  switch (kind) {
    case Kind::shifted_power:
      return std::pow(shift + n, -exponent);
    case Kind::geometric:
      return std::pow(ratio, n);
    case Kind::constant_k:
      return 0.0;
  }
  return 0.0;
}

void SummableSequence::validate() const {
  switch (kind) {
    case Kind::shifted_power:
      if (!(exponent > 1.0)) throw ConfigError("a_n = (A+n)^-beta needs beta > 1");
      if (!(shift > 0.0)) throw ConfigError("a_n = (A+n)^-beta needs A > 0");
      break;
    case Kind::geometric:
      if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("geometric a_n needs ratio in (0,1)");
      break;
    case Kind::constant_k:
      if (constant_k < 1) throw ConfigError("constant inner index must be >= 1");
      break;
  }
}

double SolverConfig::theta() const { return theta_exponent(nu, space.r); }

double SolverConfig::resolved_vartheta() const {
  if (vartheta) return *vartheta;
  return choose_vartheta(c_omega, c_const, rho, space.p, space.p_star(), space.s_star());
}

std::vector<std::string> SolverConfig::validate() const {
  auto warnings = space.validate();
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be >= 0");
  if (!(tau > 1.0)) throw ConfigError("tau must be > 1");
  if (!(tau_tilde > 0.0)) throw ConfigError("tau_tilde must be > 0");
  if (!(eta >= 0.0 && eta < 1.0)) throw ConfigError("eta must lie in [0,1)");
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("q must lie in (0,1)");
  if (!(alpha00 > 0.0 && alpha00 <= 1.0)) throw ConfigError("alpha00 must lie in (0,1]");
  if (!(omega_bar > 0.0)) throw ConfigError("omega_bar must be > 0");
  if (!(c_omega > 0.0 && c_omega < 1.0)) throw ConfigError("c_omega must lie in (0,1)");
  if (!(rho > 0.0)) throw ConfigError("rho must be > 0");
  if (!(c_const > 0.0)) throw ConfigError("C_{p*,s*} must be > 0");
  if (vartheta && !(*vartheta > 0.0)) throw ConfigError("vartheta must be > 0");
  if (eval_stride < 1) throw ConfigError("eval_stride must be >= 1");
  if (budgets.max_outer < 1 || budgets.max_inner < 1 || budgets.max_total_inner < 1)
    throw ConfigError("budgets must be positive");
  a_seq.validate();
  const double th = theta();
  if (space.s_star() < th + 1.0 || space.p_star() < th + 1.0)
    throw ConfigError("theta too large: need s* >= theta+1 and p* >= theta+1");
  if (rate_mode) {
    if (th == 0.0) {
      warnings.emplace_back("rate_mode has no effect with theta = 0");
    } else {
      const double lower = std::pow(tau_tilde * (1.0 + eta), space.r / (1.0 + th));
      if (!(c_alpha > lower))
        throw ConfigError("rate_mode needs C_alpha > (tau_tilde (1+eta))^(r/(1+theta)) = " +
                          std::to_string(lower));
    }
  }
  resolved_vartheta();
  return warnings;
}

// ---- parameter rules -----------------------------------------------------------

double theta_exponent(double nu, double r) {
  if (!(nu >= 0.0 && nu <= 0.5)) throw ConfigError("nu must lie in [0, 1/2]");
  if (!(r > 1.0)) throw ConfigError("r must be > 1");
  const double denom = r * (1.0 + 2.0 * nu) - 4.0 * nu;
  if (!(denom > 0.0)) throw ConfigError("theta denominator r(1+2nu)-4nu must be positive");
  return 4.0 * nu / denom;
}

double choose_vartheta(double c_omega, double c_const, double rho, double p, double p_star,
                       double s_star) {
  const double a = std::pow(2.0, s_star - 1.0) * c_const *
                   std::pow(p * rho * rho, 1.0 - s_star / p_star);
  const double b = std::pow(2.0, p_star - 1.0) * c_const;
  for (int j = 0; j <= 64; ++j) {
    const double v = std::ldexp(1.0, -j);
    if (a * std::pow(v, s_star - 1.0) + b * std::pow(v, p_star - 1.0) <= c_omega) return v;
  }
  throw ConfigError("no vartheta = 2^-j, j <= 64, satisfies the omega bound; check C, rho, c_omega");
}

OmegaChoice choose_omega(double t, double t_tilde, double vartheta, double omega_bar,
                         const SpaceParams& space) {
  if (!(t_tilde > 0.0)) return {vartheta * omega_bar, true};
  if (!(t > 0.0)) return {0.0, false};
  // Evaluated in logs; t_tilde^-s overflows easily near convergence.
  const double lt = std::log(t);
  const double ltt = std::log(t_tilde);
  const double e1 = space.r / (space.s_star() - 1.0) * lt - space.s * ltt;
  const double e2 = space.r / (space.p_star() - 1.0) * lt - space.p * ltt;
  const double le = std::min(e1, e2);
  const double m = le < std::log(omega_bar) ? std::exp(le) : omega_bar;
  return {vartheta * m, false};
}

double alpha_check(double t, double r_n, double eta, double delta, double tau_tilde, double r,
                   double theta) {
  const double base = t + eta * r_n + (1.0 + eta) * delta;
  return tau_tilde * std::pow(base, r / (1.0 + theta));
}

double alpha_hat(double alpha_prev, double q, double theta) {
  if (theta == 0.0) return 0.0;
  return alpha_prev * std::pow(1.0 - (1.0 - q) * alpha_prev, 1.0 / theta);
}

double next_alpha(double alpha_prev, double t_next, double r_n, const SolverConfig& c) {
  const double th = c.theta();
  const double check = alpha_check(t_next, r_n, c.eta, c.delta, c.tau_tilde, c.space.r, th);
  const double hat = alpha_hat(alpha_prev, c.q, th);
  return std::min(1.0, std::max(check, hat));
}

bool outer_stop(double r_n, double tau, double delta) { return r_n <= tau * delta; }

long inner_index(int n, double r_n, const SolverConfig& c) {
  const long cap = c.budgets.max_inner;
  if (c.a_seq.kind == SummableSequence::Kind::constant_k)
    return std::min(cap, c.a_seq.constant_k);
  const double raw = std::floor(c.a_seq(n) * std::pow(r_n, -c.space.r));
  if (!(raw < static_cast<double>(cap))) return cap;
  return std::max(1L, static_cast<long>(raw));
}

// ---- log ---------------------------------------------------------------------------

std::string_view to_string(InnerStopReason reason) {
  switch (reason) {
    case InnerStopReason::none:
      return "none";
    case InnerStopReason::index_reached:
      return "index";
    case InnerStopReason::inner_discrepancy:
      return "inner_discrepancy";
    case InnerStopReason::inner_budget:
      return "inner_budget";
  }
  return "none";
}

std::string_view to_string(Termination reason) {
  switch (reason) {
    case Termination::discrepancy:
      return "discrepancy";
    case Termination::outer_budget:
      return "outer_budget";
    case Termination::total_budget:
      return "total_budget";
    case Termination::operator_not_invertible:
      return "operator_not_invertible";
    case Termination::non_finite:
      return "non_finite";
    case Termination::refinement_budget:
      return "refinement_budget";
    case Termination::invalid_config:
      return "invalid_config";
  }
  return "unknown";
}

long IterationLog::newton_steps() const {
  return std::count_if(records.begin(), records.end(),
                       [](const IterationRecord& r) { return r.phase == Phase::newton; });
}

// ---- iteration -----------------------------------------------------------------------

GridFunction IterationState::recompute_z(double p) const {
  return x0 + inverse_duality_map(base_dual + u_dual, p);
}

IterationState begin_outer(const ForwardOperator& op, const GridFunction& y, const GridFunction& x0,
                           const GridFunction& x, int n, double alpha_start,
                           const SolverConfig& config) {
  IterationState s;
  s.n = n;
  s.k = 0;
  s.x0 = x0;
  s.x = x;
  s.z = x;
  s.u_dual = x.zeros_like();
  s.base_dual = duality_map(x - x0, config.space.p);
  s.alpha = alpha_start;
  try {
    s.lin = op.linearize(x);
  } catch (const OperatorNotInvertible& e) {
    throw OperatorNotInvertible(e.what(), n);
  }
  s.base_residual = s.lin->value() - y;
  s.lin_residual = s.base_residual;
  s.r_n = lp_norm(s.base_residual, config.space.r);
  s.t = s.r_n;
  return s;
}

IterationRecord inner_step(IterationState& s, const SolverConfig& config, double vartheta,
                           const GridFunction* truth) {
  const SpaceParams& sp = config.space;
  IterationRecord rec;
  rec.n = s.n;
  rec.k = s.k;
  rec.alpha = s.alpha;
  rec.r_n = s.r_n;
  rec.t = s.t;
  if (truth) {
    const double d2 = shifted_bregman(*truth, s.z, s.x0, sp.p);
    rec.d2 = d2;
    rec.gamma = d2 * std::pow(s.alpha, -config.theta());
  }

  const GridFunction grad = s.lin->adjoint(duality_map(s.lin_residual, sp.r));
  rec.t_tilde = lp_norm(grad, sp.p_star());
  const OmegaChoice om = choose_omega(rec.t, rec.t_tilde, vartheta, config.omega_bar, sp);
  rec.omega = om.omega;
  rec.degenerate = om.degenerate;

  s.u_dual.add_scaled(-s.alpha, duality_map(s.z - s.x0, sp.p));
  s.u_dual.add_scaled(-om.omega, grad);
  s.z = s.recompute_z(sp.p);
  if (!s.z.all_finite() || !s.u_dual.all_finite())
    throw NonFiniteValue("inner step produced a non-finite iterate at n=" + std::to_string(s.n) +
                         ", k=" + std::to_string(s.k));

  s.lin_residual = s.lin->apply(s.z - s.x) + s.base_residual;
  s.t = lp_norm(s.lin_residual, sp.r);
  s.alpha = next_alpha(s.alpha, s.t, s.r_n, config);
  rec.alpha_next = s.alpha;
  ++s.k;
  return rec;
}

InnerStopDecision inner_stop(const IterationState& s, long k_n, const ForwardOperator& op,
                             const GridFunction& y, const SolverConfig& config) {
  InnerStopDecision d;
  if (s.k % config.eval_stride == 0) {
    GridFunction fz;
    try {
      fz = op.evaluate(s.z);
    } catch (const OperatorNotInvertible& e) {
      throw OperatorNotInvertible(e.what(), s.n);
    }
    const double res = lp_norm(fz - y, config.space.r);
    d.f_residual = res;
    if (res <= config.tau * config.delta) {
      d.stop = true;
      d.reason = InnerStopReason::inner_discrepancy;
      return d;
    }
  }
  if (s.k >= k_n) {
    d.stop = true;
    d.reason = k_n >= config.budgets.max_inner ? InnerStopReason::inner_budget
                                               : InnerStopReason::index_reached;
  }
  return d;
}

GridFunction final_refinement(IterationState& s, const SolverConfig& config, double vartheta,
                              IterationLog& log, const GridFunction* truth,
                              std::optional<double>& final_alpha,
                              std::optional<double>& previous_alpha) {
  const double th = config.theta();
  if (th == 0.0) return s.z;
  const double bound =
      config.c_alpha * std::pow(s.r_n + config.delta, config.space.r / (1.0 + th));
  std::optional<double> prev;
  while (!(s.alpha <= bound)) {
    if (s.k >= config.budgets.max_inner)
      throw BudgetExhausted("final refinement exhausted the inner budget before alpha <= " +
                        std::to_string(bound));
    prev = s.alpha;
    IterationRecord rec = inner_step(s, config, vartheta, truth);
    rec.phase = Phase::refinement;
    log.records.push_back(rec);
  }
  final_alpha = s.alpha;
  previous_alpha = prev;
  return s.z;
}

RunResult run(const ForwardOperator& op, const GridFunction& y, const GridFunction& x0,
              const SolverConfig& config, const GridFunction* truth) {
  RunResult result;
  result.solution = x0;
  double vartheta = 0.0;
  try {
    result.warnings = config.validate();
    vartheta = config.resolved_vartheta();
    require_same_domain(x0, y, "run");
    if (truth) require_same_domain(*truth, x0, "run");
  } catch (const Error& e) {
    result.reason = Termination::invalid_config;
    result.message = e.what();
    return result;
  }
  const GridFunction* diag_truth = config.diagnostics ? truth : nullptr;

  GridFunction x = x0;
  double alpha = config.alpha00;
  long total = 0;
  int n = 0;
  try {
    for (;; ++n) {
      IterationState s = begin_outer(op, y, x0, x, n, alpha, config);
      result.final_residual = s.r_n;
      result.n_star = n;
      if (outer_stop(s.r_n, config.tau, config.delta)) {
        result.reason = Termination::discrepancy;
        if (config.rate_mode && config.theta() > 0.0) {
          result.solution = final_refinement(s, config, vartheta, result.log, diag_truth,
                                             result.final_alpha, result.previous_alpha);
        } else {
          result.solution = x;
        }
        break;
      }
      if (n >= config.budgets.max_outer) {
        result.reason = Termination::outer_budget;
        result.message = "outer iteration budget exhausted";
        result.solution = x;
        break;
      }
      const long k_n = inner_index(n, s.r_n, config);
      OuterRecord outer{n, s.r_n, k_n, 0, InnerStopReason::none};
      bool out_of_budget = false;
      for (;;) {
        IterationRecord rec = inner_step(s, config, vartheta, diag_truth);
        ++total;
        const InnerStopDecision d = inner_stop(s, k_n, op, y, config);
        rec.f_residual = d.f_residual;
        result.log.records.push_back(rec);
        if (d.stop) {
          outer.reason = d.reason;
          break;
        }
        if (total >= config.budgets.max_total_inner) {
          outer.reason = InnerStopReason::inner_budget;
          out_of_budget = true;
          break;
        }
      }
      outer.steps = s.k;
      result.log.outer.push_back(outer);
      x = s.z;
      alpha = s.alpha;
      if (out_of_budget) {
        result.reason = Termination::total_budget;
        result.message = "total inner iteration budget exhausted";
        result.solution = x;
        result.n_star = n + 1;
        break;
      }
    }
  } catch (const OperatorNotInvertible& e) {
    result.reason = Termination::operator_not_invertible;
    result.message = e.what();
    result.solution = x;
  } catch (const NonFiniteValue& e) {
    result.reason = Termination::non_finite;
    result.message = e.what();
    result.solution = x;
  } catch (const BudgetExhausted& e) {
    result.reason = Termination::refinement_budget;
    result.message = e.what();
    result.solution = x;
  }
  result.total_inner = total;
  return result;
}

}  // namespace nirlw
