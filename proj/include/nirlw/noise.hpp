#pragma once

#include <cstdint>
#include <random>

#include "nirlw/grid_function.hpp"

namespace nirlw {

/// Portable Gaussian source: std::mt19937_64 (bit-exact across standard
/// libraries) feeding a Box-Muller transform. std::normal_distribution is
/// avoided because its algorithm is implementation-defined.
class NormalRng {
 public:
  explicit NormalRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// u + (delta / ||xi||_r) xi with xi standard normal per node, so the
/// perturbation has L^r norm delta. delta == 0 returns u.
GridFunction generate_noise(const GridFunction& u, double delta, double r, std::uint64_t seed);

/// Adds +-magnitude at `count` distinct nodes drawn from the seed. count == 0
/// is a no-op; count above the node count throws ConfigError.
GridFunction add_outliers(const GridFunction& data, int count, double magnitude,
                          std::uint64_t seed);

}  // namespace nirlw
