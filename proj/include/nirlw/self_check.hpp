#pragma once
// Fast property checks behind `nirlw_cli verify`: kernel equivalence,
// Bregman identities, adjoint identity, Taylor order of the derivative and
// noise-norm exactness. Each check is deterministic for a given seed.

#include <cstdint>
#include <string>
#include <vector>

namespace nirlw {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_property_checks(std::uint64_t seed = 20240601);

/// Least-squares slope of log(err) against log(t).
double fitted_order(const std::vector<double>& t, const std::vector<double>& err);

}  // namespace nirlw
