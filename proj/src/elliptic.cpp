#include "nirlw/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nirlw/errors.hpp"

namespace nirlw {
namespace {

bool finite_all(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

BoundaryData BoundaryData::line(double g0, double g1) { return {{g0}, {g1}, {}, {}}; }

BoundaryData BoundaryData::trace(const GridDomain& d,
                                 const std::function<double(double, double)>& g) {
  if (d.dim != 2) throw DomainMismatch("boundary trace needs a 2D grid");
  BoundaryData b;
  for (int j = 0; j < d.ny; ++j) {
    b.left.push_back(g(0.0, d.y(j)));
    b.right.push_back(g(1.0, d.y(j)));
  }
  for (int i = 0; i < d.nx; ++i) {
    b.bottom.push_back(g(d.x(i), 0.0));
    b.top.push_back(g(d.x(i), 1.0));
  }
  return b;
}

void EllipticProblem::validate() const {
  if (domain.nx < 2 || (domain.dim == 2 && domain.ny < 2))
    throw ConfigError("elliptic problem needs at least 2 interior nodes per axis");
  if (!(rhs.domain() == domain)) throw DomainMismatch("right-hand side lives on another grid");
  if (!rhs.all_finite()) throw NonFiniteValue("right-hand side is not finite");
  const auto ny = static_cast<std::size_t>(domain.dim == 2 ? domain.ny : 1);
  const auto nx = static_cast<std::size_t>(domain.dim == 2 ? domain.nx : 0);
  if (boundary.left.size() != ny || boundary.right.size() != ny || boundary.bottom.size() != nx ||
      boundary.top.size() != nx)
    throw ConfigError("boundary data does not match the grid");
  if (!finite_all(boundary.left) || !finite_all(boundary.right) || !finite_all(boundary.bottom) ||
      !finite_all(boundary.top))
    throw NonFiniteValue("boundary data is not finite");
}

SymmetricBandMatrix assemble_operator(const GridDomain& d, const GridFunction& c) {
  if (!(c.domain() == d)) throw DomainMismatch("coefficient lives on another grid");
  if (!c.all_finite()) throw NonFiniteValue("coefficient is not finite");
  const double ihx2 = 1.0 / (d.hx() * d.hx());
  if (d.dim == 1) {
    SymmetricBandMatrix a(d.size(), 1);
    for (int i = 0; i < d.nx; ++i) {
      a.at(i, i) = 2.0 * ihx2 + c[i];
      if (i > 0) a.at(i, i - 1) = -ihx2;
    }
    return a;
  }
  const double ihy2 = 1.0 / (d.hy() * d.hy());
  const auto nx = static_cast<std::size_t>(d.nx);
  SymmetricBandMatrix a(d.size(), nx);
  for (int j = 0; j < d.ny; ++j) {
    for (int i = 0; i < d.nx; ++i) {
      const std::size_t k = j * nx + i;
      a.at(k, k) = 2.0 * ihx2 + 2.0 * ihy2 + c[k];
      if (i > 0) a.at(k, k - 1) = -ihx2;
      if (j > 0) a.at(k, k - nx) = -ihy2;
    }
  }
  return a;
}

GridFunction assemble_rhs(const EllipticProblem& p) {
  const GridDomain& d = p.domain;
  GridFunction b = p.rhs;
  const double ihx2 = 1.0 / (d.hx() * d.hx());
  if (d.dim == 1) {
    b[0] += p.boundary.left[0] * ihx2;
    b[d.size() - 1] += p.boundary.right[0] * ihx2;
    return b;
  }
  const double ihy2 = 1.0 / (d.hy() * d.hy());
  const auto nx = static_cast<std::size_t>(d.nx);
  for (int j = 0; j < d.ny; ++j) {
    b[j * nx] += p.boundary.left[j] * ihx2;
    b[j * nx + nx - 1] += p.boundary.right[j] * ihx2;
  }
  for (int i = 0; i < d.nx; ++i) {
    b[i] += p.boundary.bottom[i] * ihy2;
    b[(d.ny - 1) * nx + i] += p.boundary.top[i] * ihy2;
  }
  return b;
}

ForwardEvaluation::ForwardEvaluation(GridFunction c, GridFunction u,
                                     std::shared_ptr<const BandedCholesky> factor)
    : c_(std::move(c)), u_(std::move(u)), factor_(std::move(factor)) {}

GridFunction ForwardEvaluation::solve(const GridFunction& b) const {
  require_same_domain(b, u_, "solve");
  GridFunction x = b;
  factor_->solve_in_place(x.values());
  return x;
}

GridFunction ForwardEvaluation::apply(const GridFunction& h) const {
  GridFunction v = hadamard(h, u_);
  factor_->solve_in_place(v.values());
  v *= -1.0;
  return v;
}

GridFunction ForwardEvaluation::adjoint(const GridFunction& w) const {
  require_same_domain(w, u_, "adjoint");
  GridFunction v = w;
  const auto wt = v.weights();
  auto vals = v.values();
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= wt[i];
  factor_->solve_in_place(vals);
  const auto u = u_.values();
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = -u[i] * vals[i] / wt[i];
  return v;
}

ForwardEvaluation solve_state(const EllipticProblem& problem, const GridFunction& c) {
  problem.validate();
  auto factor = std::make_shared<const BandedCholesky>(assemble_operator(problem.domain, c));
  GridFunction u = assemble_rhs(problem);
  factor->solve_in_place(u.values());
  return ForwardEvaluation(c, std::move(u), std::move(factor));
}

GridFunction forward(const EllipticProblem& problem, const GridFunction& c) {
  return solve_state(problem, c).state();
}

GridFunction derivative_apply(const ForwardEvaluation& eval, const GridFunction& h) {
  return eval.apply(h);
}

GridFunction adjoint_apply(const ForwardEvaluation& eval, const GridFunction& w) {
  return eval.adjoint(w);
}

EllipticForward::EllipticForward(EllipticProblem problem) : problem_(std::move(problem)) {
  problem_.validate();
  rhs_with_boundary_ = assemble_rhs(problem_);
}

GridFunction EllipticForward::evaluate(const GridFunction& c) const {
  BandedCholesky factor(assemble_operator(problem_.domain, c));
  GridFunction u = rhs_with_boundary_;
  factor.solve_in_place(u.values());
  return u;
}

std::shared_ptr<const Linearization> EllipticForward::linearize(const GridFunction& c) const {
  auto factor = std::make_shared<const BandedCholesky>(assemble_operator(problem_.domain, c));
  GridFunction u = rhs_with_boundary_;
  factor->solve_in_place(u.values());
  return std::make_shared<const ForwardEvaluation>(c, std::move(u), std::move(factor));
}

}  // namespace nirlw
