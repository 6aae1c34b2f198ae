// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Criteria 5-7 use independent oracles (dense matrices, direct formulas);
// criteria 1-4, 8 and 9 run the presets end to end, and criterion 10 audits
// every iteration record those runs produced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nirlw/banach.hpp"
#include "nirlw/elliptic.hpp"
#include "nirlw/experiments.hpp"
#include "nirlw/noise.hpp"
#include "nirlw/self_check.hpp"
#include "nirlw/solver.hpp"
#include "oracles.hpp"

using namespace nirlw;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Run {
  ExperimentSpec spec;
  RunReport report;
};

std::string summary(const Run& r) {
  return r.spec.name + "(p=" + num(r.spec.config.space.p) + ",r=" + num(r.spec.config.space.r) +
         "): " + std::string(to_string(r.report.reason)) + " err_L2=" + num(r.report.error.l2) +
         " N_p=" + std::to_string(r.report.total_inner) + " " + num(r.report.wall_ms / 1000.0) + "s";
}

/// Runs all specs concurrently; results keep the input order.
std::vector<Run> run_all(std::vector<ExperimentSpec> specs) {
  std::vector<std::future<RunReport>> futures;
  for (const auto& s : specs) futures.push_back(std::async(std::launch::async, [&s] { return run_experiment(s); }));
  std::vector<Run> out;
  for (std::size_t i = 0; i < specs.size(); ++i) out.push_back({specs[i], futures[i].get()});
  return out;
}

GridFunction random_function(const GridDomain& d, NormalRng& rng, double lo, double hi) {
  GridFunction f(d);
  for (auto& v : f.values()) v = lo + (hi - lo) * rng.uniform();
  return f;
}

EllipticProblem affine_problem(const GridDomain& d) {
  if (d.dim == 1) {
    return {d, GridFunction::sample(d, [](double t) { return 1.0 + 5.0 * t; }), BoundaryData::line(1.0, 6.0)};
  }
  auto g = [](double x, double y) { return 1.0 + x + y; };
  return {d, GridFunction::sample(d, g), BoundaryData::trace(d, g)};
}

std::vector<double> as_vector(const GridFunction& f) { return {f.values().begin(), f.values().end()}; }

// ---------------------------------------------------------------------------

Outcome table_pair(const Run& a, const Run& b, double err_a, double err_b, long lo_a, long hi_a,
                   long lo_b, long hi_b, double runtime_s) {
  Outcome o;
  for (const auto* r : {&a, &b}) {
    const bool first = r == &a;
    o.require(r->report.ok(), summary(*r));
    o.require(r->report.error.l2 <= (first ? err_a : err_b), "err_L2 <= " + num(first ? err_a : err_b));
    const long n = r->report.total_inner;
    o.require(n >= (first ? lo_a : lo_b) && n <= (first ? hi_a : hi_b),
              "N_p in [" + std::to_string(first ? lo_a : lo_b) + "," + std::to_string(first ? hi_a : hi_b) + "]");
    o.require(r->report.wall_ms <= runtime_s * 1000.0, "runtime <= " + num(runtime_s) + "s");
    o.require(r->report.total_inner == static_cast<long>(r->report.log.records.size()),
              "N_p == record count");
  }
  o.require(a.report.total_inner < b.report.total_inner, "N_p(p=1.1) < N_p(p=2)");
  return o;
}

Outcome criterion3(const std::vector<Run>& runs) {
  Outcome o;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& r = runs[i];
    o.require(r.report.ok(), summary(r) + " tau=" + num(r.spec.config.tau));
    o.require(r.report.error.l2 <= 0.45, "err_L2 <= 0.45");
    o.require(r.report.total_inner <= 2000, "N_p <= 2000");
  }
  const auto& ref = runs[1];
  const auto& ctl = runs[2];
  bool same = ref.report.data.size() == ctl.report.data.size();
  for (std::size_t i = 0; same && i < ref.report.data.size(); ++i) same = ref.report.data[i] == ctl.report.data[i];
  o.require(same, "r=2 control uses identical data");
  o.require(ctl.report.error.l2 > ref.report.error.l2,
            "control " + summary(ctl) + " worse than r=1.1 (" + num(ref.report.error.l2) + ")");
  return o;
}

Outcome criterion4(const std::vector<Run>& runs) {
  Outcome o;
  for (const auto& r : runs) {
    o.require(r.report.ok(), summary(r) + " delta=" + num(r.spec.noise.delta));
    const auto& c = r.report.reconstruction;
    const auto& d = c.domain();
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] > c[best]) best = i;
    const double x = d.x(static_cast<int>(best % static_cast<std::size_t>(d.nx)));
    const double y = d.y(static_cast<int>(best / static_cast<std::size_t>(d.nx)));
    o.require(x >= 0.14 && x <= 0.29 && y >= 0.14 && y <= 0.29,
              "argmax at (" + num(x) + "," + num(y) + ") in [0.14,0.29]^2");
    o.require(r.report.wall_ms <= 300'000.0, "runtime <= 5 min");
    if (r.spec.config.space.r == 10.0 && r.spec.noise.delta == 1e-2)
      o.require(r.report.total_inner <= 50, "r=10 uses N_p=" + std::to_string(r.report.total_inner) + " <= 50");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  NormalRng rng(5);
  for (const GridDomain& d : {GridDomain::line(50), GridDomain::square(12, 12)}) {
    const auto prob = affine_problem(d);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = random_function(d, rng, 0.0, 5.0);
      const auto h = random_function(d, rng, -1.0, 1.0);
      const auto w = random_function(d, rng, -1.0, 1.0);
      const auto ev = solve_state(prob, c);
      const double gap = std::fabs(pairing(ev.apply(h), w) - pairing(h, ev.adjoint(w)));
      worst = std::max(worst, gap / (lp_norm(h, 2.0) * lp_norm(w, 2.0)));
    }
    o.require(worst <= 1e-8, std::string(d.dim == 1 ? "1D N=50" : "2D 12x12") + " max rel gap " + num(worst));

    // Dense oracle: F'* = W^-1 M^T W with M = -A(c)^-1 diag(u).
    const auto c = random_function(d, rng, 0.0, 5.0);
    const auto w = random_function(d, rng, -1.0, 1.0);
    const auto ev = solve_state(prob, c);
    const auto m = oracle::derivative_matrix(d, as_vector(c), as_vector(ev.state()));
    const auto mt = oracle::weighted_transpose(m, quadrature_weights(d));
    const auto dense = oracle::apply(mt, as_vector(w));
    const auto got = ev.adjoint(w);
    double scale = 0.0;
    for (double v : dense) scale = std::max(scale, std::fabs(v));
    const double dev = oracle::max_abs_diff(got.values(), dense) / std::max(scale, 1e-300);
    o.require(dev <= 1e-8, "dense transpose deviation " + num(dev));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  NormalRng rng(6);
  const GridDomain d = GridDomain::line(50);
  const auto prob = affine_problem(d);
  const std::vector<double> ts = {1e-1, 1e-2, 1e-3, 1e-4};
  double worst = 1e9;
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_function(d, rng, 0.0, 5.0);
    const auto h = random_function(d, rng, -1.0, 1.0);
    const auto ev = solve_state(prob, c);
    const auto dh = ev.apply(h);
    std::vector<double> errs;
    for (double t : ts) {
      GridFunction ct = c;
      ct.add_scaled(t, h);
      GridFunction rem = forward(prob, ct) - ev.state();
      rem.add_scaled(-t, dh);
      errs.push_back(lp_norm(rem, 2.0));
    }
    worst = std::min(worst, fitted_order(ts, errs));
  }
  o.require(worst >= 1.9, "min fitted order " + num(worst) + " >= 1.9 over 10 (c,h)");
  return o;
}

// Direct formulas with explicit sums, independent of the library's Bregman code.
double dist(const std::vector<double>& w, const std::vector<double>& a, const std::vector<double>& b, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double jb = std::copysign(std::pow(std::fabs(b[i]), p - 1.0), b[i]);
    s += w[i] * (std::pow(std::fabs(a[i]), p) / p - std::pow(std::fabs(b[i]), p) / p - jb * (a[i] - b[i]));
  }
  return s;
}

Outcome criterion7() {
  Outcome o;
  NormalRng rng(7);
  const GridDomain d = GridDomain::line(64);
  const auto w = quadrature_weights(d);
  for (double p : {1.1, 1.5, 2.0, 3.0}) {
    const double ps = p / (p - 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto xt = random_function(d, rng, -1.0, 1.0);
      const auto x = random_function(d, rng, -1.0, 1.0);
      const auto z = random_function(d, rng, -1.0, 1.0);
      const double lib = bregman(xt, x, p);
      // Three-point: D(xt,x) = D(xt,z) + D(z,x) + <J z - J x, xt - z>.
      const double three_lib = bregman(xt, z, p) + bregman(z, x, p) +
                               pairing(duality_map(z, p) - duality_map(x, p), xt - z);
      const auto vxt = as_vector(xt), vx = as_vector(x), vz = as_vector(z);
      const double direct = dist(w, vxt, vx, p);
      // Primal-dual: D_p(xt, x) = D_{p*}(J x, J xt).
      const auto jx = as_vector(duality_map(x, p)), jxt = as_vector(duality_map(xt, p));
      const double dual = dist(w, jx, jxt, ps);
      const double scale = std::max(std::fabs(direct), 1e-300);
      worst = std::max({worst, std::fabs(lib - direct) / scale, std::fabs(three_lib - direct) / scale,
                        std::fabs(dual - direct) / scale});
    }
    o.require(worst <= 1e-10, "p=" + num(p) + " max rel " + num(worst));
  }
  return o;
}

Outcome criterion8(const Run& r) {
  Outcome o;
  const auto& recs = r.report.log.records;
  o.require(!recs.empty() && recs.front().gamma.has_value(), std::to_string(recs.size()) + " records with gamma");
  if (recs.empty() || !recs.front().gamma) return o;
  std::size_t good = 0, steps = 0;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    ++steps;
    if (*recs[i].gamma <= *recs[i - 1].gamma + 1e-10) ++good;
  }
  const double frac = steps ? static_cast<double>(good) / static_cast<double>(steps) : 0.0;
  o.require(frac >= 0.95, "non-increasing on " + num(100.0 * frac) + "% of " + std::to_string(steps) + " steps");
  o.require(*recs.back().gamma < *recs.front().gamma,
            "net decrease " + num(*recs.front().gamma) + " -> " + num(*recs.back().gamma));
  return o;
}

Outcome criterion9(const std::vector<Run>& runs) {
  Outcome o;
  int with_previous = 0;
  for (const auto& r : runs) {
    const auto& cfg = r.spec.config;
    o.require(r.report.ok(), "delta=" + num(r.spec.noise.delta) + " " + std::string(to_string(r.report.reason)) +
                                 " err_L2=" + num(r.report.error.l2));
    if (!r.report.final_alpha) {
      o.require(false, "no final alpha");
      continue;
    }
    const double bound =
        cfg.c_alpha * std::pow(r.report.final_residual + r.report.delta, cfg.space.r / (1.0 + cfg.theta()));
    o.require(*r.report.final_alpha <= bound, "alpha=" + num(*r.report.final_alpha) + " <= " + num(bound));
    if (r.report.previous_alpha) {
      ++with_previous;
      o.require(*r.report.previous_alpha > bound, "preceding alpha " + num(*r.report.previous_alpha) + " > bound");
    }
  }
  o.require(with_previous > 0, "refinement active in " + std::to_string(with_previous) + " runs");
  for (std::size_t i = 1; i < runs.size(); ++i)
    o.require(runs[i].report.error.l2 <= runs[i - 1].report.error.l2, "err_L2 non-increasing as delta decreases");
  return o;
}

Outcome criterion10(const std::vector<const Run*>& runs) {
  Outcome o;
  std::size_t n_rec = 0, bad_omega = 0, bad_phi = 0, bad_alpha = 0, bad_carry = 0, bad_start = 0;
  for (const Run* r : runs) {
    const auto& cfg = r->spec.config;
    const double v = cfg.resolved_vartheta();
    const auto sp = cfg.space;
    const auto& recs = r->report.log.records;
    if (!recs.empty() && recs.front().alpha != cfg.alpha00) ++bad_start;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& rec = recs[i];
      ++n_rec;
      if (!(rec.omega > 0.0 && rec.omega <= v * cfg.omega_bar)) ++bad_omega;
      if (rec.t_tilde > 0.0 && rec.t > 0.0) {
        const double ratio = phi(rec.omega * rec.t_tilde, cfg.c_const, cfg.rho, sp.p_star(), sp.s_star(), sp.p) /
                             (rec.omega * std::pow(rec.t, sp.r));
        if (!(ratio <= cfg.c_omega + 1e-12)) ++bad_phi;
      }
      if (!(rec.alpha > 0.0 && rec.alpha <= 1.0)) ++bad_alpha;
      if (i > 0 && rec.alpha != recs[i - 1].alpha_next) ++bad_carry;
    }
  }
  o.require(n_rec > 0, std::to_string(n_rec) + " records from " + std::to_string(runs.size()) + " runs");
  o.require(bad_omega == 0, "0 < omega <= vartheta*omega_bar (" + std::to_string(bad_omega) + " violations)");
  o.require(bad_phi == 0, "phi(omega tt)/(omega t^r) <= c_omega (" + std::to_string(bad_phi) + " violations)");
  o.require(bad_alpha == 0, "0 < alpha <= 1 (" + std::to_string(bad_alpha) + " violations)");
  o.require(bad_carry == 0, "alpha carried across steps (" + std::to_string(bad_carry) + " violations)");
  o.require(bad_start == 0, "alpha_{0,0} = alpha00 (" + std::to_string(bad_start) + " violations)");
  return o;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();

  // Launch every end-to-end run up front; the slow ones overlap.
  std::vector<ExperimentSpec> specs;
  specs.push_back(make_example1(1.1));
  specs.push_back(make_example1(2.0));
  specs.push_back(make_example2(1.1));
  specs.push_back(make_example2(2.0));
  for (auto& s : preset_variants("example3")) specs.push_back(s);
  {
    auto control = make_example3(1.0 + 1e-5, 2.0);
    control.name = "example3_control_r2";
    control.noise.norm_exponent = 1.1;
    specs.push_back(control);
  }
  for (auto& s : preset_variants("example2d")) specs.push_back(s);
  {
    auto s = make_example1(1.1);
    s.name = "example1_noiseless";
    s.noise.delta = 0.0;
    s.config.delta = 0.0;
    s.config.nu = 0.0;
    s.config.diagnostics = true;
    s.config.budgets.max_total_inner = 2000;
    specs.push_back(s);
  }
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    auto s = make_example1(2.0);
    s.name = "example1_rate";
    s.noise.delta = delta;
    s.config.delta = delta;
    s.config.nu = 0.5;
    s.config.rate_mode = true;
    s.config.c_alpha = 1.0;
    // With theta = 1 alpha decays only like 1/((1-q)k) and the floor
    // tau_tilde (...)^(r/2) is linear in the residual; the defaults
    // (q = 0.9, tau_tilde = 0.1) hold the residual above tau delta for
    // delta <= 1e-3 within the outer budget.
    s.config.q = 0.1;
    s.config.tau_tilde = 1e-2;
    specs.push_back(s);
  }
  const auto runs = run_all(specs);
  // Index layout: 0-1 ex1, 2-3 ex2, 4-6 ex3 (+control), 7-9 2D, 10 noiseless, 11-13 rate.

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 Example 1 reproduction",
       [&] { return table_pair(runs[0], runs[1], 0.10, 0.25, 1000, 10000, 1300, 13000, 120.0); }},
      {"2 Example 2 reproduction",
       [&] {
         auto o = table_pair(runs[2], runs[3], 0.12, 0.25, 1037, 9330, 1380, 12423, 120.0);
         o.require(runs[2].report.error.l2 < runs[3].report.error.l2, "err(p=1.1) < err(p=2)");
         return o;
       }},
      {"3 Example 3 outlier robustness", [&] { return criterion3({runs[4], runs[5], runs[6]}); }},
      {"4 2D example", [&] { return criterion4({runs[7], runs[8], runs[9]}); }},
      {"5 Adjoint identity", [] { return criterion5(); }},
      {"6 Derivative order", [] { return criterion6(); }},
      {"7 Bregman identities", [] { return criterion7(); }},
      {"8 Monotonicity diagnostic", [&] { return criterion8(runs[10]); }},
      {"9 Rate-mode mechanics", [&] { return criterion9({runs[11], runs[12], runs[13]}); }},
      {"10 omega/alpha parameter bounds",
       [&] {
         std::vector<const Run*> all;
         for (const auto& r : runs) all.push_back(&r);
         return criterion10(all);
       }},
  };

  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.passed) ++failed;
    std::printf("%s  %s :: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu criteria passed (%.1f s)\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
