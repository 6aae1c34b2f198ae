#include "nirlw/banded_cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nirlw/errors.hpp"
#include "nirlw/kernels.hpp"

namespace nirlw {

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t n, std::size_t bandwidth)
    : n_(n), bw_(std::min(bandwidth, n == 0 ? 0 : n - 1)), data_(n * (bw_ + 1), 0.0) {}

void SymmetricBandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i >= bw_ ? i - bw_ : 0;
    double s = 0.0;
    for (std::size_t j = lo; j <= i; ++j) s += at(i, j) * x[j];
    for (std::size_t k = i + 1; k <= std::min(n_ - 1, i + bw_); ++k) s += at(k, i) * x[k];
    y[i] = s;
  }
}

BandedCholesky::BandedCholesky(SymmetricBandMatrix a) : factor_(std::move(a)) {
  const std::size_t n = factor_.n_;
  const std::size_t bw = factor_.bw_;
  const std::size_t stride = bw + 1;
  double* d = factor_.data_.data();

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(factor_.at(i, i)));
  const double tiny = 1e-14 * std::max(scale, 1e-300);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= bw ? i - bw : 0;
    double* row_i = d + (i * stride + bw - i);  // row_i[k] == L(i, k)
    for (std::size_t j = lo; j < i; ++j) {
      const double* row_j = d + (j * stride + bw - j);
      const std::size_t k0 = std::max(lo, j >= bw ? j - bw : 0);
      const double s = kernels::dot({row_i + k0, j - k0}, {row_j + k0, j - k0});
      row_i[j] = (row_i[j] - s) / row_j[j];
    }
    const double s = kernels::dot({row_i + lo, i - lo}, {row_i + lo, i - lo});
    const double pivot = row_i[i] - s;
    if (!(pivot > tiny) || !std::isfinite(pivot))
      throw OperatorNotInvertible("operator not invertible: nonpositive pivot " +
                                  std::to_string(pivot) + " at row " + std::to_string(i));
    row_i[i] = std::sqrt(pivot);
  }
}

void BandedCholesky::solve_in_place(std::span<double> b) const {
  const std::size_t n = factor_.n_;
  const std::size_t bw = factor_.bw_;
  const std::size_t stride = bw + 1;
  const double* d = factor_.data_.data();
  // L y = b
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= bw ? i - bw : 0;
    const double* row_i = d + (i * stride + bw - i);
    const double s = kernels::dot({row_i + lo, i - lo}, {b.data() + lo, i - lo});
    b[i] = (b[i] - s) / row_i[i];
  }
  // L^T x = y, column sweep so every update reads a contiguous row of L.
  for (std::size_t i = n; i-- > 0;) {
    const double* row_i = d + (i * stride + bw - i);
    b[i] /= row_i[i];
    const std::size_t lo = i >= bw ? i - bw : 0;
    kernels::axpy(-b[i], {row_i + lo, i - lo}, {b.data() + lo, i - lo});
  }
}

}  // namespace nirlw
