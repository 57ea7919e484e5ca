// Scalar reference kernels.
//
// These spell out the exact per-element arithmetic and the reduction
// lane scheme that the SIMD variants must reproduce bit-for-bit:
//   - complex multiply: re = ar*br - ai*bi, im = ar*bi + ai*br
//   - real reductions: 4 accumulator lanes by index mod 4, combined as
//     (l0 + l2) + (l1 + l3), tail elements added after the combine
//   - complex reductions: 2 lanes by element parity, combined even+odd,
//     tail element added after the combine

#include "kernel_table.hpp"

namespace qps::simd::detail {
namespace {

inline const double* re_im(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* re_im(cplx* p) { return reinterpret_cast<double*>(p); }

void cmul_scalar(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = re_im(a);
  const double* pb = re_im(b);
  double* pd = re_im(dst);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    pd[2 * i] = ar * br - ai * bi;
    pd[2 * i + 1] = ar * bi + ai * br;
  }
}

void cmul_conj_scalar(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = re_im(a);
  const double* pb = re_im(b);
  double* pd = re_im(dst);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    pd[2 * i] = ar * br + ai * bi;
    pd[2 * i + 1] = ar * bi - ai * br;
  }
}

void cscale_scalar(cplx* dst, const cplx* a, cplx s, std::size_t n) {
  const double* pa = re_im(a);
  double* pd = re_im(dst);
  const double sr = s.real(), si = s.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    pd[2 * i] = ar * sr - ai * si;
    pd[2 * i + 1] = ar * si + ai * sr;
  }
}

void cadd_scalar(cplx* dst, const cplx* a, std::size_t n) {
  const double* pa = re_im(a);
  double* pd = re_im(dst);
  for (std::size_t i = 0; i < 2 * n; ++i) pd[i] = pd[i] + pa[i];
}

void abs2_scalar(double* dst, const cplx* a, std::size_t n) {
  const double* pa = re_im(a);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    dst[i] = ar * ar + ai * ai;
  }
}

double sum_scalar(const double* a, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    lane[0] += a[i];
    lane[1] += a[i + 1];
    lane[2] += a[i + 2];
    lane[3] += a[i + 3];
  }
  double total = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (std::size_t i = n4; i < n; ++i) total += a[i];
  return total;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    lane[0] += a[i] * b[i];
    lane[1] += a[i + 1] * b[i + 1];
    lane[2] += a[i + 2] * b[i + 2];
    lane[3] += a[i + 3] * b[i + 3];
  }
  double total = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * b[i];
  return total;
}

cplx csum_scalar(const cplx* a, std::size_t n) {
  const double* pa = re_im(a);
  double lane[4] = {0.0, 0.0, 0.0, 0.0};  // re_even, im_even, re_odd, im_odd
  const std::size_t n2 = n - n % 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    lane[0] += pa[2 * i];
    lane[1] += pa[2 * i + 1];
    lane[2] += pa[2 * i + 2];
    lane[3] += pa[2 * i + 3];
  }
  double re = lane[0] + lane[2];
  double im = lane[1] + lane[3];
  if (n2 < n) {
    re += pa[2 * n2];
    im += pa[2 * n2 + 1];
  }
  return {re, im};
}

cplx csum_mul_real_scalar(const cplx* a, const double* w, std::size_t n) {
  const double* pa = re_im(a);
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n2 = n - n % 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    lane[0] += pa[2 * i] * w[i];
    lane[1] += pa[2 * i + 1] * w[i];
    lane[2] += pa[2 * i + 2] * w[i + 1];
    lane[3] += pa[2 * i + 3] * w[i + 1];
  }
  double re = lane[0] + lane[2];
  double im = lane[1] + lane[3];
  if (n2 < n) {
    re += pa[2 * n2] * w[n2];
    im += pa[2 * n2 + 1] * w[n2];
  }
  return {re, im};
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table = {
      cmul_scalar, cmul_conj_scalar, cscale_scalar, cadd_scalar,      abs2_scalar,
      sum_scalar,  dot_scalar,       csum_scalar,   csum_mul_real_scalar,
  };
  return table;
}

}  // namespace qps::simd::detail
