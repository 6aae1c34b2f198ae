#include "nirlw/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "nirlw/banach.hpp"
#include "nirlw/errors.hpp"

namespace nirlw {

double NormalRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t NormalRng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n));
}

double NormalRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite.
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

GridFunction generate_noise(const GridFunction& u, double delta, double r, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw ConfigError("noise level must be >= 0");
  if (delta == 0.0) return u;
  NormalRng rng(seed);
  GridFunction xi = u.zeros_like();
  double norm = 0.0;
  while (norm == 0.0) {
    for (double& v : xi.values()) v = rng.normal();
    norm = lp_norm(xi, r);
  }
  GridFunction out = u;
  out.add_scaled(delta / norm, xi);

  // Forming u + s xi rounds every node at the scale of |u|, which perturbs the
  // realized ||u^delta - u||_r by up to a few 1e-12 relative when |u| >> delta.
  // The difference u^delta - u is exact in floating point, so cancel the
  // deficit in sum_i w_i |d_i|^r by moving single nodes a whole number of
  // ulps, most sensitive nodes first; later nodes make ever finer corrections.
  const auto w = out.weights();
  const std::size_t n = out.size();
  std::vector<double> d(n), sens(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = out[i] - u[i];
    sum += w[i] * std::pow(std::fabs(d[i]), r);
    sens[i] = r * w[i] * std::pow(std::fabs(d[i]), r - 1.0);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&sens](std::size_t a, std::size_t b) { return sens[a] > sens[b]; });
  const double target = std::pow(delta, r);
  for (std::size_t i : order) {
    const double deficit = target - sum;
    if (deficit == 0.0 || sens[i] == 0.0) continue;
    const double up = std::nextafter(out[i], std::numeric_limits<double>::infinity());
    const double ulp = up - out[i];
    const double sign = d[i] > 0.0 ? 1.0 : -1.0;
    const double k = std::round(deficit / (sens[i] * ulp));
    if (k == 0.0 || std::fabs(k) > 64.0) continue;
    const double moved = out[i] + sign * k * ulp;
    const double d_new = moved - u[i];
    sum += w[i] * (std::pow(std::fabs(d_new), r) - std::pow(std::fabs(d[i]), r));
    out[i] = moved;
    d[i] = d_new;
  }
  return out;
}

GridFunction add_outliers(const GridFunction& data, int count, double magnitude,
                          std::uint64_t seed) {
  if (count < 0) throw ConfigError("outlier count must be >= 0");
  if (static_cast<std::size_t>(count) > data.size())
    throw ConfigError("more outliers requested than grid nodes");
  GridFunction out = data;
  if (count == 0) return out;
  // Separate stream from the Gaussian draw of the same seed.
  NormalRng rng(seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> idx(data.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (int i = 0; i < count; ++i) {
    const std::size_t j = i + rng.index(idx.size() - i);
    std::swap(idx[i], idx[j]);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    out[idx[i]] += sign * magnitude;
  }
  return out;
}

}  // namespace nirlw
