#pragma once
// Data-parallel inner loops used by the grid-function algebra and the banded
// factorization. Each kernel has a scalar reference implementation and, on
// x86-64, an AVX2/FMA variant. The variant is picked once at runtime from the
// CPU feature bits; NIRLW_ISA=scalar in the environment forces the reference
// path.

#include <cstddef>
#include <span>
#include <string_view>

namespace nirlw::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  // sum_i w_i a_i b_i
  double (*weighted_dot)(const double* w, const double* a, const double* b, std::size_t n);
  // sum_i a_i b_i
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i w_i x_i^2
  double (*weighted_sum_sq)(const double* w, const double* x, std::size_t n);
  // y += a x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out = a*x + b*y
  void (*axpby)(double a, const double* x, double b, const double* y, double* out, std::size_t n);
  // out = x .* y
  void (*hadamard)(const double* x, const double* y, double* out, std::size_t n);
  // max_i |x_i|
  double (*max_abs)(const double* x, std::size_t n);
};

namespace scalar {
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double weighted_sum_sq(const double* w, const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n);
void hadamard(const double* x, const double* y, double* out, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace scalar

#if defined(NIRLW_HAVE_AVX2)
namespace avx2 {
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double weighted_sum_sq(const double* w, const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n);
void hadamard(const double* x, const double* y, double* out, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace avx2
#endif

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Table for a specific variant. Falls back to scalar if unavailable.
const KernelTable& table(Isa isa);

/// Variant chosen for this process (fixed after the first call).
Isa active_isa();
const KernelTable& active();

// Span conveniences over the active table. Sizes must agree; callers check.
inline double weighted_dot(std::span<const double> w, std::span<const double> a,
                           std::span<const double> b) {
  return active().weighted_dot(w.data(), a.data(), b.data(), w.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double weighted_sum_sq(std::span<const double> w, std::span<const double> x) {
  return active().weighted_sum_sq(w.data(), x.data(), w.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
                  std::span<double> out) {
  active().axpby(a, x.data(), b, y.data(), out.data(), x.size());
}
inline void hadamard(std::span<const double> x, std::span<const double> y, std::span<double> out) {
  active().hadamard(x.data(), y.data(), out.data(), x.size());
}
inline double max_abs(std::span<const double> x) { return active().max_abs(x.data(), x.size()); }

}  // namespace nirlw::kernels
