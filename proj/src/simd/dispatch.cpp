#include <atomic>
#include <cstdlib>
#include <string>

#include "nfisac/simd/kernels.hpp"

namespace nfisac::simd {
namespace {

Isa detect() {
  if (const char* env = std::getenv("NFISAC_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
  }
  return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_supported() {
#if defined(NFISAC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported()) return;
  current().store(isa, std::memory_order_relaxed);
}

#if defined(NFISAC_HAVE_AVX2_KERNELS)
#define NFISAC_DISPATCH(fn, ...) \
  (active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define NFISAC_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

cplx dot(std::span<const cplx> a, std::span<const cplx> b) { return NFISAC_DISPATCH(dot, a, b); }

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) { return NFISAC_DISPATCH(dotc, a, b); }

double squared_norm(std::span<const cplx> a) { return NFISAC_DISPATCH(squared_norm, a); }

cplx polyval_sum(const SoaView& y, const double* zr, const double* zi) {
  return NFISAC_DISPATCH(polyval_sum, y, zr, zi);
}

#undef NFISAC_DISPATCH

}  // namespace nfisac::simd
