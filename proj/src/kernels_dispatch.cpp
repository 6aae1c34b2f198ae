#include <cstdlib>
#include <string>

#include "nirlw/kernels.hpp"

namespace nirlw::kernels {
namespace {

constexpr KernelTable kScalar{scalar::weighted_dot, scalar::dot,   scalar::weighted_sum_sq,
                              scalar::axpy,         scalar::axpby, scalar::hadamard,
                              scalar::max_abs};

#if defined(NIRLW_HAVE_AVX2)
constexpr KernelTable kAvx2{avx2::weighted_dot, avx2::dot,   avx2::weighted_sum_sq,
                            avx2::axpy,         avx2::axpby, avx2::hadamard,
                            avx2::max_abs};
#endif

Isa detect() {
  if (const char* env = std::getenv("NIRLW_ISA")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(NIRLW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelTable& table(Isa isa) {
#if defined(NIRLW_HAVE_AVX2)
  if (isa == Isa::avx2 && isa_available(Isa::avx2)) return kAvx2;
#else
  (void)isa;
#endif
  return kScalar;
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& t = table(active_isa());
  return t;
}

}  // namespace nirlw::kernels
