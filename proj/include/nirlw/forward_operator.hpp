#pragma once

#include <memory>

#include "nirlw/grid_function.hpp"

namespace nirlw {

/// F'(x) frozen at one point, with F(x) cached.
class Linearization {
 public:
  virtual ~Linearization() = default;
  /// F(x) at the linearization point.
  virtual const GridFunction& value() const = 0;
  /// F'(x) h
  virtual GridFunction apply(const GridFunction& h) const = 0;
  /// F'(x)^* w with respect to the weighted discrete pairing.
  virtual GridFunction adjoint(const GridFunction& w) const = 0;
};

/// Nonlinear forward map the solver works with.
class ForwardOperator {
 public:
  virtual ~ForwardOperator() = default;
  virtual GridFunction evaluate(const GridFunction& x) const = 0;
  virtual std::shared_ptr<const Linearization> linearize(const GridFunction& x) const = 0;
};

}  // namespace nirlw
