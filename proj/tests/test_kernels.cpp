#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nirlw/kernels.hpp"

using namespace nirlw::kernels;

namespace {

struct Inputs {
  std::vector<double> w, a, b;
};

Inputs make_inputs(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-3.0, 3.0);
  Inputs in{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    in.w[i] = unit(gen);
    in.a[i] = sym(gen);
    in.b[i] = sym(gen);
  }
  return in;
}

double abs_sum(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] * b[i]);
  return s;
}

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  const auto in = make_inputs(37, 1);
  const KernelTable& s = table(Isa::scalar);
  double wd = 0.0, d = 0.0, ss = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < 37; ++i) {
    wd += in.w[i] * in.a[i] * in.b[i];
    d += in.a[i] * in.b[i];
    ss += in.w[i] * in.a[i] * in.a[i];
    mx = std::max(mx, std::fabs(in.a[i]));
  }
  CHECK(s.weighted_dot(in.w.data(), in.a.data(), in.b.data(), 37) == doctest::Approx(wd).epsilon(1e-14));
  CHECK(s.dot(in.a.data(), in.b.data(), 37) == doctest::Approx(d).epsilon(1e-14));
  CHECK(s.weighted_sum_sq(in.w.data(), in.a.data(), 37) == doctest::Approx(ss).epsilon(1e-14));
  CHECK(s.max_abs(in.a.data(), 37) == mx);
}

TEST_CASE("avx2 kernels are equivalent to the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 not available on this CPU/build; equivalence test skipped");
    return;
  }
  const KernelTable& s = table(Isa::scalar);
  const KernelTable& v = table(Isa::avx2);
  // Lengths around the 4-wide and 8-wide unroll boundaries plus a few large ones.
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 400u, 900u, 1023u}) {
    CAPTURE(n);
    const auto in = make_inputs(n, static_cast<unsigned>(n) + 7);
    const double scale = 1.0 + abs_sum(in.a, in.b);
    const double tol = 1e-14 * scale;
    CHECK(std::fabs(s.weighted_dot(in.w.data(), in.a.data(), in.b.data(), n) -
                    v.weighted_dot(in.w.data(), in.a.data(), in.b.data(), n)) <= tol);
    CHECK(std::fabs(s.dot(in.a.data(), in.b.data(), n) - v.dot(in.a.data(), in.b.data(), n)) <= tol);
    CHECK(std::fabs(s.weighted_sum_sq(in.w.data(), in.a.data(), n) -
                    v.weighted_sum_sq(in.w.data(), in.a.data(), n)) <= 1e-14 * (1.0 + abs_sum(in.a, in.a)));
    CHECK(s.max_abs(in.a.data(), n) == v.max_abs(in.a.data(), n));

    std::vector<double> y1 = in.b, y2 = in.b;
    s.axpy(0.37, in.a.data(), y1.data(), n);
    v.axpy(0.37, in.a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(y1[i] - y2[i]) <= 1e-15 * (1.0 + std::fabs(y1[i])));

    std::vector<double> o1(n), o2(n);
    s.axpby(-1.5, in.a.data(), 2.25, in.b.data(), o1.data(), n);
    v.axpby(-1.5, in.a.data(), 2.25, in.b.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(o1[i] - o2[i]) <= 1e-15 * (1.0 + std::fabs(o1[i])));

    s.hadamard(in.a.data(), in.b.data(), o1.data(), n);
    v.hadamard(in.a.data(), in.b.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == o2[i]);
  }
}

TEST_CASE("active table is one of the compiled variants") {
  const Isa isa = active_isa();
  CHECK((isa == Isa::scalar || isa_available(isa)));
  CHECK(&active() == &table(isa));
}
