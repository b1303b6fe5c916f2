// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.

#include <immintrin.h>

#include "nfisac/simd/kernels.hpp"

namespace nfisac::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Sums of even (real-slot) and odd (imag-slot) lanes.
inline void even_odd(__m256d v, double& even, double& odd) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  even = t[0] + t[2];
  odd = t[1] + t[3];
}

// Accumulates a*b and a*swap(b) over interleaved complex data.
void products(std::span<const cplx> a, std::span<const cplx> b, double& p_even, double& p_odd,
              double& q_even, double& q_odd) {
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  const std::size_t n = a.size();
  __m256d p0 = _mm256_setzero_pd(), p1 = _mm256_setzero_pd();
  __m256d q0 = _mm256_setzero_pd(), q1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
    const __m256d b1 = _mm256_loadu_pd(pb + 2 * i + 4);
    p0 = _mm256_fmadd_pd(a0, b0, p0);
    p1 = _mm256_fmadd_pd(a1, b1, p1);
    q0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), q0);
    q1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), q1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
    p0 = _mm256_fmadd_pd(a0, b0, p0);
    q0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), q0);
  }
  even_odd(_mm256_add_pd(p0, p1), p_even, p_odd);
  even_odd(_mm256_add_pd(q0, q1), q_even, q_odd);
  for (; i < n; ++i) {
    p_even += a[i].real() * b[i].real();
    p_odd += a[i].imag() * b[i].imag();
    q_even += a[i].real() * b[i].imag();
    q_odd += a[i].imag() * b[i].real();
  }
}

// Horner update acc <- acc * z + y for four lanes.
inline void horner_step(__m256d& ar, __m256d& ai, __m256d zr, __m256d zi, __m256d yr, __m256d yi) {
  const __m256d t = _mm256_fmadd_pd(ar, zr, yr);
  const __m256d u = _mm256_fmadd_pd(ar, zi, yi);
  ar = _mm256_fnmadd_pd(ai, zi, t);
  ai = _mm256_fmadd_pd(ai, zr, u);
}

}  // namespace

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  double pe, po, qe, qo;
  products(a, b, pe, po, qe, qo);
  return {pe - po, qe + qo};
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  double pe, po, qe, qo;
  products(a, b, pe, po, qe, qo);
  return {pe + po, qe - qo};
}

double squared_norm(std::span<const cplx> a) {
  const double* p = reinterpret_cast<const double*>(a.data());
  const std::size_t count = 2 * a.size();
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(p + i);
    const __m256d v1 = _mm256_loadu_pd(p + i + 4);
    s0 = _mm256_fmadd_pd(v0, v0, s0);
    s1 = _mm256_fmadd_pd(v1, v1, s1);
  }
  double acc = hsum(_mm256_add_pd(s0, s1));
  for (; i < count; ++i) acc += p[i] * p[i];
  return acc;
}

cplx polyval_sum(const SoaView& y, const double* zr, const double* zi) {
  __m256d tot_r = _mm256_setzero_pd(), tot_i = _mm256_setzero_pd();
  std::size_t l = 0;
  // Four independent chains of four lanes each hide the FMA latency.
  for (; l + 16 <= y.stride; l += 16) {
    __m256d zr0 = _mm256_loadu_pd(zr + l), zr1 = _mm256_loadu_pd(zr + l + 4);
    __m256d zr2 = _mm256_loadu_pd(zr + l + 8), zr3 = _mm256_loadu_pd(zr + l + 12);
    __m256d zi0 = _mm256_loadu_pd(zi + l), zi1 = _mm256_loadu_pd(zi + l + 4);
    __m256d zi2 = _mm256_loadu_pd(zi + l + 8), zi3 = _mm256_loadu_pd(zi + l + 12);
    __m256d ar0 = _mm256_setzero_pd(), ar1 = ar0, ar2 = ar0, ar3 = ar0;
    __m256d ai0 = ar0, ai1 = ar0, ai2 = ar0, ai3 = ar0;
    for (std::size_t k = y.length; k-- > 0;) {
      const double* rr = y.re + k * y.stride + l;
      const double* ri = y.im + k * y.stride + l;
      horner_step(ar0, ai0, zr0, zi0, _mm256_loadu_pd(rr), _mm256_loadu_pd(ri));
      horner_step(ar1, ai1, zr1, zi1, _mm256_loadu_pd(rr + 4), _mm256_loadu_pd(ri + 4));
      horner_step(ar2, ai2, zr2, zi2, _mm256_loadu_pd(rr + 8), _mm256_loadu_pd(ri + 8));
      horner_step(ar3, ai3, zr3, zi3, _mm256_loadu_pd(rr + 12), _mm256_loadu_pd(ri + 12));
    }
    tot_r = _mm256_add_pd(tot_r, _mm256_add_pd(_mm256_add_pd(ar0, ar1), _mm256_add_pd(ar2, ar3)));
    tot_i = _mm256_add_pd(tot_i, _mm256_add_pd(_mm256_add_pd(ai0, ai1), _mm256_add_pd(ai2, ai3)));
  }
  for (; l + 8 <= y.stride; l += 8) {
    __m256d zr0 = _mm256_loadu_pd(zr + l), zr1 = _mm256_loadu_pd(zr + l + 4);
    __m256d zi0 = _mm256_loadu_pd(zi + l), zi1 = _mm256_loadu_pd(zi + l + 4);
    __m256d ar0 = _mm256_setzero_pd(), ar1 = ar0, ai0 = ar0, ai1 = ar0;
    for (std::size_t k = y.length; k-- > 0;) {
      const double* rr = y.re + k * y.stride + l;
      const double* ri = y.im + k * y.stride + l;
      horner_step(ar0, ai0, zr0, zi0, _mm256_loadu_pd(rr), _mm256_loadu_pd(ri));
      horner_step(ar1, ai1, zr1, zi1, _mm256_loadu_pd(rr + 4), _mm256_loadu_pd(ri + 4));
    }
    tot_r = _mm256_add_pd(tot_r, _mm256_add_pd(ar0, ar1));
    tot_i = _mm256_add_pd(tot_i, _mm256_add_pd(ai0, ai1));
  }
  return {hsum(tot_r), hsum(tot_i)};
}

}  // namespace nfisac::simd::avx2
