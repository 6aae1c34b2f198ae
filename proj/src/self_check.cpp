#include "nirlw/self_check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nirlw/banach.hpp"
#include "nirlw/elliptic.hpp"
#include "nirlw/errors.hpp"
#include "nirlw/kernels.hpp"
#include "nirlw/noise.hpp"

namespace nirlw {
namespace {

GridFunction random_function(const GridDomain& d, NormalRng& rng, double lo, double hi) {
  GridFunction f(d);
  for (auto& v : f.values()) v = lo + (hi - lo) * rng.uniform();
  return f;
}

EllipticProblem affine_problem(const GridDomain& d) {
  if (d.dim == 1) {
    auto u = GridFunction::sample(d, [](double t) { return 1.0 + 5.0 * t; });
    return {d, u, BoundaryData::line(1.0, 6.0)};
  }
  auto g = [](double x, double y) { return 1.0 + x + y; };
  return {d, GridFunction::sample(d, g), BoundaryData::trace(d, g)};
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult check_kernels(NormalRng& rng) {
  using namespace kernels;
  CheckResult res{"kernel equivalence (scalar vs avx2)", true, ""};
  if (!isa_available(Isa::avx2)) {
    res.detail = "avx2 unavailable; scalar only";
    return res;
  }
  const KernelTable& s = table(Isa::scalar);
  const KernelTable& v = table(Isa::avx2);
  double worst = 0.0;
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 31u, 402u, 1001u}) {
    std::vector<double> w(n), a(n), b(n), o1(n), o2(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = rng.uniform();
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::fabs(a[i] * b[i]);
    worst = std::max(worst, std::fabs(s.weighted_dot(w.data(), a.data(), b.data(), n) -
                                      v.weighted_dot(w.data(), a.data(), b.data(), n)) / scale);
    worst = std::max(worst, std::fabs(s.dot(a.data(), b.data(), n) - v.dot(a.data(), b.data(), n)) / scale);
    s.axpby(0.3, a.data(), -1.7, b.data(), o1.data(), n);
    v.axpby(0.3, a.data(), -1.7, b.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(o1[i] - o2[i]));
    if (s.max_abs(a.data(), n) != v.max_abs(a.data(), n)) worst = 1.0;
  }
  res.passed = worst <= 1e-13;
  res.detail = "max relative deviation " + sci(worst);
  return res;
}

CheckResult check_bregman(NormalRng& rng) {
  CheckResult res{"Bregman three-point and primal-dual identities", true, ""};
  const GridDomain d = GridDomain::line(64);
  double worst = 0.0;
  for (double p : {1.1, 1.5, 2.0, 3.0}) {
    const double ps = conjugate_exponent(p);
    for (int trial = 0; trial < 100; ++trial) {
      const auto xt = random_function(d, rng, -1.0, 1.0);
      const auto x = random_function(d, rng, -1.0, 1.0);
      const auto z = random_function(d, rng, -1.0, 1.0);
      const auto jx = duality_map(x, p);
      const auto jz = duality_map(z, p);
      const double lhs = bregman(xt, x, p);
      const double three = bregman(xt, z, p) + bregman(z, x, p) + pairing(jz - jx, xt - z);
      const double pd = std::pow(lp_norm(xt, p), p) / p + std::pow(lp_norm(jx, ps), ps) / ps -
                        pairing(jx, xt);
      const double scale = std::max(1.0, std::fabs(lhs));
      worst = std::max({worst, std::fabs(lhs - three) / scale, std::fabs(lhs - pd) / scale});
    }
  }
  res.passed = worst <= 1e-10;
  res.detail = "max relative deviation " + sci(worst);
  return res;
}

CheckResult check_adjoint(NormalRng& rng) {
  CheckResult res{"adjoint identity (1D N=50, 2D 12x12)", true, ""};
  double worst = 0.0;
  for (const GridDomain& d : {GridDomain::line(50), GridDomain::square(12, 12)}) {
    const EllipticProblem prob = affine_problem(d);
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = random_function(d, rng, 0.0, 5.0);
      const auto h = random_function(d, rng, -1.0, 1.0);
      const auto w = random_function(d, rng, -1.0, 1.0);
      const ForwardEvaluation ev = solve_state(prob, c);
      const double lhs = pairing(ev.apply(h), w);
      const double rhs = pairing(h, ev.adjoint(w));
      worst = std::max(worst, std::fabs(lhs - rhs) / (lp_norm(h, 2.0) * lp_norm(w, 2.0)));
    }
  }
  res.passed = worst <= 1e-8;
  res.detail = "max |<F'h,w> - <h,F'*w>| / (|h||w|) = " + sci(worst);
  return res;
}

CheckResult check_taylor(NormalRng& rng) {
  CheckResult res{"Taylor remainder order of F'", true, ""};
  const GridDomain d = GridDomain::line(50);
  const EllipticProblem prob = affine_problem(d);
  const std::vector<double> ts = {1e-1, 1e-2, 1e-3, 1e-4};
  double worst = 10.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_function(d, rng, 0.0, 5.0);
    const auto h = random_function(d, rng, -1.0, 1.0);
    const ForwardEvaluation ev = solve_state(prob, c);
    const GridFunction dh = ev.apply(h);
    std::vector<double> errs;
    for (double t : ts) {
      GridFunction c_t = c;
      c_t.add_scaled(t, h);
      GridFunction rem = forward(prob, c_t) - ev.state();
      rem.add_scaled(-t, dh);
      errs.push_back(lp_norm(rem, 2.0));
    }
    worst = std::min(worst, fitted_order(ts, errs));
  }
  res.passed = worst >= 1.9;
  res.detail = "minimum fitted order " + sci(worst);
  return res;
}

CheckResult check_noise() {
  CheckResult res{"noise norm exactness", true, ""};
  const GridDomain d = GridDomain::line(400);
  const auto u = GridFunction::sample(d, [](double t) { return 1.0 + 5.0 * t; });
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (double r : {1.1, 2.0, 10.0}) {
      const auto y = generate_noise(u, 1e-4, r, seed);
      worst = std::max(worst, std::fabs(lp_norm(y - u, r) - 1e-4) / 1e-4);
    }
  }
  res.passed = worst <= 1e-12;
  res.detail = "max relative deviation " + sci(worst);
  return res;
}

}  // namespace

double fitted_order(const std::vector<double>& t, const std::vector<double>& err) {
  if (t.size() != err.size() || t.size() < 2) throw ConfigError("fitted_order needs >= 2 points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    mx += std::log(t[i]) / n;
    my += std::log(err[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dx = std::log(t[i]) - mx;
    sxy += dx * (std::log(err[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<CheckResult> run_property_checks(std::uint64_t seed) {
  NormalRng rng(seed);
  std::vector<CheckResult> out;
  auto guarded = [&out](const char* name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };
  guarded("kernel equivalence", [&] { return check_kernels(rng); });
  guarded("Bregman identities", [&] { return check_bregman(rng); });
  guarded("adjoint identity", [&] { return check_adjoint(rng); });
  guarded("Taylor order", [&] { return check_taylor(rng); });
  guarded("noise norm", [] { return check_noise(); });
  return out;
}

}  // namespace nirlw
