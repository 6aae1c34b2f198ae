#pragma once
// L^q geometry on uniform grids: quadrature norms, the dual pairing, duality
// mappings and Bregman distances. Dual elements (images of duality maps,
// adjoint outputs) are stored as GridFunctions on the same grid and paired
// with the same quadrature weights.

#include <string>
#include <vector>

#include "nirlw/grid_function.hpp"

namespace nirlw {

/// Conjugate exponent q/(q-1).
double conjugate_exponent(double q);

/// Exponents of X = L^p (s-convex) and Y = L^r.
struct SpaceParams {
  double p = 2.0;
  double s = 2.0;
  double r = 2.0;
  /// Turn a violation of r >= s >= p into a ConfigError instead of a warning.
  bool strict = false;

  /// L^p is max(p,2)-convex; that is the default s.
  static SpaceParams lebesgue(double p, double r, bool strict = false);

  double p_star() const { return conjugate_exponent(p); }
  double s_star() const { return conjugate_exponent(s); }

  /// Throws ConfigError on p <= 1, r <= 1 or s < p. Returns non-fatal warnings.
  std::vector<std::string> validate() const;
};

/// (sum_i w_i |f_i|^q)^(1/q).
double lp_norm(const GridFunction& f, double q);

/// sum_i w_i a_i b_i, the discrete <a, b>_{X*,X}.
double pairing(const GridFunction& a, const GridFunction& b);

/// Pointwise |f|^(q-1) sgn(f); the identity for q = 2.
GridFunction duality_map(const GridFunction& f, double q);

/// duality_map with the conjugate exponent, the inverse of duality_map(., q).
GridFunction inverse_duality_map(const GridFunction& g, double q);

/// Bregman distance of (1/p)||.||^p between x_tilde and x.
double bregman(const GridFunction& x_tilde, const GridFunction& x, double p);

/// bregman(x_tilde - x0, x - x0, p).
double shifted_bregman(const GridFunction& x_tilde, const GridFunction& x, const GridFunction& x0,
                       double p);

/// Upper model for the dual-step Bregman term:
///   2^(s*-1) C (p rho^2)^(1 - s*/p*) lambda^s* + 2^(p*-1) C lambda^p*.
double phi(double lambda, double c_const, double rho, double p_star, double s_star, double p);

}  // namespace nirlw
