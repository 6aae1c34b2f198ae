#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace nirlw {

/// Uniform grid on (0,1)^dim. Unknowns live on interior nodes only; nx (and ny
/// in 2D) count the interior nodes along each axis, so the spacing is
/// 1/(nx+1). Node (i, j) is stored at index j*nx + i.
struct GridDomain {
  int dim = 1;
  int nx = 0;
  int ny = 1;

  static GridDomain line(int n) { return {1, n, 1}; }
  static GridDomain square(int n, int m) { return {2, n, m}; }

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  double hx() const { return 1.0 / (nx + 1); }
  double hy() const { return dim == 2 ? 1.0 / (ny + 1) : 1.0; }
  double x(int i) const { return (i + 1) * hx(); }
  double y(int j) const { return (j + 1) * hy(); }

  bool operator==(const GridDomain&) const = default;
};

/// Quadrature weights on the interior nodes: spacing h everywhere, 3h/2 on the
/// first and last node of each axis (the trapezoid end weights with the
/// boundary cell folded onto its neighbour). Weights sum to exactly 1 and are
/// tensor products in 2D.
std::vector<double> quadrature_weights(const GridDomain& domain);

/// Real function sampled on the interior nodes of a GridDomain, together with
/// the quadrature weights used for every norm and pairing. Values are owned;
/// the weight table is shared between functions on the same domain.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(const GridDomain& domain, double fill = 0.0);
  GridFunction(const GridDomain& domain, std::vector<double> values);

  /// Samples f(x) (1D) or f(x, y) (2D) at the interior nodes.
  static GridFunction sample(const GridDomain& domain, const std::function<double(double)>& f);
  static GridFunction sample(const GridDomain& domain,
                             const std::function<double(double, double)>& f);

  /// Same domain and weights, all values zero.
  GridFunction zeros_like() const;

  const GridDomain& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::span<const double> weights() const { return *weights_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  bool all_finite() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s);
  /// this += a * other
  GridFunction& add_scaled(double a, const GridFunction& other);

 private:
  GridDomain domain_{};
  std::vector<double> values_;
  std::shared_ptr<const std::vector<double>> weights_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);
/// Pointwise product.
GridFunction hadamard(const GridFunction& a, const GridFunction& b);

/// Throws DomainMismatch unless both functions live on the same grid.
void require_same_domain(const GridFunction& a, const GridFunction& b, const char* where);

}  // namespace nirlw
