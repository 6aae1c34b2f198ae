#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nirlw {

/// Symmetric band matrix with half-bandwidth `bandwidth`, lower triangle
/// stored row by row: entry (i, j), i - bandwidth <= j <= i, sits at
/// i * (bandwidth + 1) + (j - i + bandwidth). Row i's band is contiguous,
/// which lets the factor and the triangular solves run on dot/axpy kernels.
class SymmetricBandMatrix {
 public:
  SymmetricBandMatrix(std::size_t n, std::size_t bandwidth);

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return bw_; }

  /// Entry (i, j) of the lower triangle, j <= i <= j + bandwidth.
  double& at(std::size_t i, std::size_t j) { return data_[i * (bw_ + 1) + (j + bw_ - i)]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * (bw_ + 1) + (j + bw_ - i)]; }

  /// y = A x using both triangles.
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  friend class BandedCholesky;
  std::size_t n_;
  std::size_t bw_;
  std::vector<double> data_;
};

/// A = L L^T for a symmetric positive definite band matrix. Construction
/// throws OperatorNotInvertible when a pivot is not safely positive.
class BandedCholesky {
 public:
  explicit BandedCholesky(SymmetricBandMatrix a);

  std::size_t size() const { return factor_.n_; }

  /// Solves A x = b in place.
  void solve_in_place(std::span<double> b) const;

 private:
  SymmetricBandMatrix factor_;
};

}  // namespace nirlw
