#include "nirlw/banach.hpp"

#include <cmath>

#include "nirlw/errors.hpp"
#include "nirlw/kernels.hpp"

namespace nirlw {
namespace {

void require_finite(const GridFunction& f, const char* where) {
  if (!f.all_finite()) throw NonFiniteValue(std::string(where) + ": non-finite grid value");
}

inline double signed_pow(double v, double e) {
  if (v == 0.0) return 0.0;
  const double m = std::pow(std::fabs(v), e);
  return v > 0.0 ? m : -m;
}

}  // namespace

double conjugate_exponent(double q) {
  if (!(q > 1.0)) throw ConfigError("conjugate exponent needs q > 1");
  return q / (q - 1.0);
}

SpaceParams SpaceParams::lebesgue(double p, double r, bool strict) {
  return {p, p < 2.0 ? 2.0 : p, r, strict};
}

std::vector<std::string> SpaceParams::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p must lie in (1, inf)");
  if (!(r > 1.0) || !std::isfinite(r)) throw ConfigError("r must lie in (1, inf)");
  if (!(s >= p) || !std::isfinite(s)) throw ConfigError("s must satisfy s >= p");
  std::vector<std::string> warnings;
  if (r < s) {
    std::string msg = "r < s: the ordering r >= s >= p does not hold";
    if (strict) throw ConfigError(msg);
    warnings.push_back(std::move(msg));
  }
  return warnings;
}

double lp_norm(const GridFunction& f, double q) {
  if (!(q >= 1.0)) throw ConfigError("lp_norm needs q >= 1");
  require_finite(f, "lp_norm");
  const auto w = f.weights();
  const auto v = f.values();
  if (q == 2.0) return std::sqrt(kernels::weighted_sum_sq(w, v));
  // Scale by the max to keep |f|^q inside the double range for large q.
  const double m = kernels::max_abs(v);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::pow(std::fabs(v[i]) / m, q);
  return m * std::pow(s, 1.0 / q);
}

double pairing(const GridFunction& a, const GridFunction& b) {
  require_same_domain(a, b, "pairing");
  return kernels::weighted_dot(a.weights(), a.values(), b.values());
}

GridFunction duality_map(const GridFunction& f, double q) {
  if (!(q > 1.0)) throw ConfigError("duality_map needs q > 1");
  require_finite(f, "duality_map");
  if (q == 2.0) return f;
  GridFunction out = f.zeros_like();
  const double e = q - 1.0;
  auto src = f.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = signed_pow(src[i], e);
  return out;
}

GridFunction inverse_duality_map(const GridFunction& g, double q) {
  return duality_map(g, conjugate_exponent(q));
}

double bregman(const GridFunction& x_tilde, const GridFunction& x, double p) {
  require_same_domain(x_tilde, x, "bregman");
  if (!(p > 1.0)) throw ConfigError("bregman needs p > 1");
  require_finite(x_tilde, "bregman");
  require_finite(x, "bregman");
  const auto w = x.weights();
  const auto a = x_tilde.values();
  const auto b = x.values();
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      s += w[i] * d * d;
    }
    return 0.5 * s;
  }
  // Summed node by node: every summand is a nonnegative scalar Bregman gap.
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double fa = std::pow(std::fabs(a[i]), p) / p;
    const double fb = std::pow(std::fabs(b[i]), p) / p;
    s += w[i] * (fa - fb - signed_pow(b[i], p - 1.0) * (a[i] - b[i]));
  }
  return s;
}

double shifted_bregman(const GridFunction& x_tilde, const GridFunction& x, const GridFunction& x0,
                       double p) {
  require_same_domain(x_tilde, x0, "shifted_bregman");
  return bregman(x_tilde - x0, x - x0, p);
}

double phi(double lambda, double c_const, double rho, double p_star, double s_star, double p) {
  const double a = std::pow(2.0, s_star - 1.0) * c_const *
                   std::pow(p * rho * rho, 1.0 - s_star / p_star) * std::pow(lambda, s_star);
  const double b = std::pow(2.0, p_star - 1.0) * c_const * std::pow(lambda, p_star);
  return a + b;
}

}  // namespace nirlw
