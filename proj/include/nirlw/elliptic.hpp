#pragma once
// Finite-difference forward operator F(c) = u(c) for -Lap u + c u = f on
// (0,1)^dim with Dirichlet data g, plus its derivative and adjoint.

#include <functional>
#include <memory>
#include <vector>

#include "nirlw/banded_cholesky.hpp"
#include "nirlw/forward_operator.hpp"
#include "nirlw/grid_function.hpp"

namespace nirlw {

/// Dirichlet values on the boundary nodes. In 1D only `left` and `right`
/// hold one value each; in 2D left/right run along y (ny values) and
/// bottom/top along x (nx values).
struct BoundaryData {
  std::vector<double> left, right, bottom, top;

  static BoundaryData line(double g0, double g1);
  static BoundaryData trace(const GridDomain& domain, const std::function<double(double, double)>& g);
};

struct EllipticProblem {
  GridDomain domain;
  GridFunction rhs;  // f
  BoundaryData boundary;

  /// Checks N >= 2 (and M >= 2), matching domains and finite data.
  void validate() const;
};

/// u(c) together with the factorization of A(c); immutable and shareable.
class ForwardEvaluation final : public Linearization {
 public:
  ForwardEvaluation(GridFunction c, GridFunction u, std::shared_ptr<const BandedCholesky> factor);

  const GridFunction& state() const { return u_; }
  const GridFunction& coefficient() const { return c_; }

  const GridFunction& value() const override { return u_; }
  /// -A(c)^{-1} (h u(c)), homogeneous boundary values.
  GridFunction apply(const GridFunction& h) const override;
  /// -u(c) W^{-1} A(c)^{-1} W w. With uniform weights W this is the familiar
  /// -u(c) A(c)^{-1} w; the W conjugation keeps it exact for the end-weighted
  /// quadrature.
  GridFunction adjoint(const GridFunction& w) const override;

  /// Solves A(c) x = b.
  GridFunction solve(const GridFunction& b) const;

 private:
  GridFunction c_;
  GridFunction u_;
  std::shared_ptr<const BandedCholesky> factor_;
};

/// Assembles the 3-point (1D) or 5-point (2D) matrix of -Lap + diag(c).
SymmetricBandMatrix assemble_operator(const GridDomain& domain, const GridFunction& c);

/// f plus the boundary contributions of the stencil.
GridFunction assemble_rhs(const EllipticProblem& problem);

ForwardEvaluation solve_state(const EllipticProblem& problem, const GridFunction& c);
GridFunction forward(const EllipticProblem& problem, const GridFunction& c);
GridFunction derivative_apply(const ForwardEvaluation& eval, const GridFunction& h);
GridFunction adjoint_apply(const ForwardEvaluation& eval, const GridFunction& w);

/// ForwardOperator adapter used by the solver.
class EllipticForward final : public ForwardOperator {
 public:
  explicit EllipticForward(EllipticProblem problem);

  const EllipticProblem& problem() const { return problem_; }

  GridFunction evaluate(const GridFunction& c) const override;
  std::shared_ptr<const Linearization> linearize(const GridFunction& c) const override;

 private:
  EllipticProblem problem_;
  GridFunction rhs_with_boundary_;
};

}  // namespace nirlw
