#pragma once

// Complex arithmetic kernels used by the hot loops (correlation, beam gain,
// dense Fisher information). Each kernel has a portable scalar reference and
// an AVX2/FMA variant; the variant is selected once at runtime from CPUID and
// can be pinned with NFISAC_SIMD=scalar|avx2.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace nfisac::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

/// Structure-of-arrays block of `lanes` complex sequences of length `length`.
/// Element (lane l, step k) lives at re[k * stride + l] / im[k * stride + l].
/// `stride` is `lanes` rounded up to a multiple of 8; padding lanes are zero.
struct SoaView {
  const double* re = nullptr;
  const double* im = nullptr;
  std::size_t lanes = 0;
  std::size_t stride = 0;
  std::size_t length = 0;
};

constexpr std::size_t padded_lanes(std::size_t lanes) { return (lanes + 7) / 8 * 8; }

bool avx2_supported();
Isa active_isa();
std::string_view isa_name(Isa isa);
/// Overrides the dispatch choice. Requesting Avx2 on a CPU without it is a no-op.
void force_isa(Isa isa);

// Dispatched entry points.

/// sum_i a_i * b_i
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
/// sum_i conj(a_i) * b_i
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
/// sum_i |a_i|^2
double squared_norm(std::span<const cplx> a);
/// sum_l sum_k y[l,k] * z_l^k, Horner-evaluated per lane. `zr`/`zi` hold at
/// least `y.stride` entries (padding entries ignored).
cplx polyval_sum(const SoaView& y, const double* zr, const double* zi);

namespace scalar {
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
double squared_norm(std::span<const cplx> a);
cplx polyval_sum(const SoaView& y, const double* zr, const double* zi);
}  // namespace scalar

namespace avx2 {
// Callers must check avx2_supported() first.
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
double squared_norm(std::span<const cplx> a);
cplx polyval_sum(const SoaView& y, const double* zr, const double* zi);
}  // namespace avx2

}  // namespace nfisac::simd
