#include "nirlw/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "nirlw/errors.hpp"
#include "nirlw/kernels.hpp"

namespace nirlw {
namespace {

std::vector<double> axis_weights(int n, double h) {
  std::vector<double> w(static_cast<std::size_t>(n), h);
  if (n >= 2) {
    w.front() = 1.5 * h;
    w.back() = 1.5 * h;
  } else if (n == 1) {
    w.front() = 2.0 * h;
  }
  return w;
}

void check_domain(const GridDomain& d) {
  if (d.dim != 1 && d.dim != 2) throw DomainMismatch("grid dimension must be 1 or 2");
  if (d.nx < 1 || d.ny < 1) throw DomainMismatch("grid must have at least one interior node");
  if (d.dim == 1 && d.ny != 1) throw DomainMismatch("1D grid must have ny == 1");
}

// Weight tables are immutable and shared by every function on a domain.
std::shared_ptr<const std::vector<double>> shared_weights(const GridDomain& d) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const std::vector<double>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{d.dim, d.nx, d.ny}];
  if (!slot) slot = std::make_shared<const std::vector<double>>(quadrature_weights(d));
  return slot;
}

}  // namespace

std::vector<double> quadrature_weights(const GridDomain& d) {
  check_domain(d);
  auto wx = axis_weights(d.nx, d.hx());
  if (d.dim == 1) return wx;
  auto wy = axis_weights(d.ny, d.hy());
  std::vector<double> w(d.size());
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) w[static_cast<std::size_t>(j) * d.nx + i] = wx[i] * wy[j];
  return w;
}

GridFunction::GridFunction(const GridDomain& domain, double fill)
    : domain_(domain), values_(domain.size(), fill), weights_(shared_weights(domain)) {}

GridFunction::GridFunction(const GridDomain& domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)), weights_(shared_weights(domain)) {
  if (values_.size() != domain_.size())
    throw DomainMismatch("value count " + std::to_string(values_.size()) +
                         " does not match grid node count " + std::to_string(domain_.size()));
}

GridFunction GridFunction::sample(const GridDomain& domain,
                                  const std::function<double(double)>& f) {
  if (domain.dim != 1) throw DomainMismatch("1D sampler used on a 2D grid");
  GridFunction g(domain);
  for (int i = 0; i < domain.nx; ++i) g.values_[i] = f(domain.x(i));
  return g;
}

GridFunction GridFunction::sample(const GridDomain& domain,
                                  const std::function<double(double, double)>& f) {
  if (domain.dim != 2) throw DomainMismatch("2D sampler used on a 1D grid");
  GridFunction g(domain);
  for (int j = 0; j < domain.ny; ++j)
    for (int i = 0; i < domain.nx; ++i)
      g.values_[static_cast<std::size_t>(j) * domain.nx + i] = f(domain.x(i), domain.y(j));
  return g;
}

GridFunction GridFunction::zeros_like() const {
  GridFunction g;
  g.domain_ = domain_;
  g.values_.assign(values_.size(), 0.0);
  g.weights_ = weights_;
  return g;
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridFunction& GridFunction::operator+=(const GridFunction& other) { return add_scaled(1.0, other); }

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  return add_scaled(-1.0, other);
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction& GridFunction::add_scaled(double a, const GridFunction& other) {
  require_same_domain(*this, other, "add_scaled");
  kernels::axpy(a, other.values_, values_);
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

GridFunction hadamard(const GridFunction& a, const GridFunction& b) {
  require_same_domain(a, b, "hadamard");
  GridFunction out = a.zeros_like();
  kernels::hadamard(a.values(), b.values(), out.values());
  return out;
}

void require_same_domain(const GridFunction& a, const GridFunction& b, const char* where) {
  if (!(a.domain() == b.domain()) || a.size() != b.size())
    throw DomainMismatch(std::string(where) + ": grid functions live on different domains");
}

}  // namespace nirlw
