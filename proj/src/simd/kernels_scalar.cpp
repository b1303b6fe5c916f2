#include "nfisac/simd/kernels.hpp"

namespace nfisac::simd::scalar {

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double squared_norm(std::span<const cplx> a) {
  double acc = 0.0;
  for (const cplx& v : a) acc += v.real() * v.real() + v.imag() * v.imag();
  return acc;
}

cplx polyval_sum(const SoaView& y, const double* zr, const double* zi) {
  double total_re = 0.0, total_im = 0.0;
  for (std::size_t l = 0; l < y.lanes; ++l) {
    double ar = 0.0, ai = 0.0;
    for (std::size_t k = y.length; k-- > 0;) {
      const std::size_t idx = k * y.stride + l;
      const double nr = ar * zr[l] - ai * zi[l] + y.re[idx];
      const double ni = ar * zi[l] + ai * zr[l] + y.im[idx];
      ar = nr;
      ai = ni;
    }
    total_re += ar;
    total_im += ai;
  }
  return {total_re, total_im};
}

}  // namespace nfisac::simd::scalar
