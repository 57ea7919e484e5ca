// AVX2 kernels.  Compiled with -mavx2 (no FMA: contraction would change
// rounding relative to the scalar reference).  Tail elements fall back to
// the same scalar expressions; reductions keep the scalar path's lane
// layout so results are bit-identical across backends.

#include "kernel_table.hpp"

#if QPS_SIMD_HAVE_AVX2_TU

#include <immintrin.h>

namespace qps::simd::detail {
namespace {

inline const double* re_im(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* re_im(cplx* p) { return reinterpret_cast<double*>(p); }

// [ar,ai]x2 * [br,bi]x2 -> [ar*br - ai*bi, ar*bi + ai*br]x2
inline __m256d cmul_vec(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);          // [ar, ar]
  const __m256d a_im = _mm256_permute_pd(a, 0b1111);  // [ai, ai]
  const __m256d b_swap = _mm256_permute_pd(b, 0b0101);
  const __m256d t1 = _mm256_mul_pd(a_re, b);       // [ar*br, ar*bi]
  const __m256d t2 = _mm256_mul_pd(a_im, b_swap);  // [ai*bi, ai*br]
  return _mm256_addsub_pd(t1, t2);
}

// conj(a) * b -> [ar*br + ai*bi, ar*bi - ai*br]x2
inline __m256d cmul_conj_vec(__m256d a, __m256d b) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0b1111);
  const __m256d b_swap = _mm256_permute_pd(b, 0b0101);
  const __m256d t1 = _mm256_mul_pd(a_re, b);
  const __m256d t2 = _mm256_xor_pd(_mm256_mul_pd(a_im, b_swap), sign_mask);
  return _mm256_addsub_pd(t1, t2);
}

void cmul_avx2(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = re_im(a);
  const double* pb = re_im(b);
  double* pd = re_im(dst);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(pd + 2 * i, cmul_vec(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    pd[2 * i] = ar * br - ai * bi;
    pd[2 * i + 1] = ar * bi + ai * br;
  }
}

void cmul_conj_avx2(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = re_im(a);
  const double* pb = re_im(b);
  double* pd = re_im(dst);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(pd + 2 * i, cmul_conj_vec(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    pd[2 * i] = ar * br + ai * bi;
    pd[2 * i + 1] = ar * bi - ai * br;
  }
}

void cscale_avx2(cplx* dst, const cplx* a, cplx s, std::size_t n) {
  const double* pa = re_im(a);
  double* pd = re_im(dst);
  const double sr = s.real(), si = s.imag();
  const __m256d vs = _mm256_setr_pd(sr, si, sr, si);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    _mm256_storeu_pd(pd + 2 * i, cmul_vec(va, vs));
  }
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    pd[2 * i] = ar * sr - ai * si;
    pd[2 * i + 1] = ar * si + ai * sr;
  }
}

void cadd_avx2(cplx* dst, const cplx* a, std::size_t n) {
  const double* pa = re_im(a);
  double* pd = re_im(dst);
  const std::size_t m = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d va = _mm256_loadu_pd(pa + i);
    const __m256d vd = _mm256_loadu_pd(pd + i);
    _mm256_storeu_pd(pd + i, _mm256_add_pd(vd, va));
  }
  for (; i < m; ++i) pd[i] = pd[i] + pa[i];
}

void abs2_avx2(double* dst, const cplx* a, std::size_t n) {
  const double* pa = re_im(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d hs = _mm256_hadd_pd(sq, sq);  // [r0^2+i0^2, ., r1^2+i1^2, .]
    dst[i] = _mm256_cvtsd_f64(hs);
    dst[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(hs, 1));
  }
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    dst[i] = ar * ar + ai * ai;
  }
}

inline double combine4(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[2]) + (lane[1] + lane[3]);
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double total = combine4(acc);
  for (std::size_t i = n4; i < n; ++i) total += a[i];
  return total;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double total = combine4(acc);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * b[i];
  return total;
}

cplx csum_avx2(const cplx* a, std::size_t n) {
  const double* pa = re_im(a);
  __m256d acc = _mm256_setzero_pd();  // [re_even, im_even, re_odd, im_odd]
  const std::size_t n2 = n - n % 2;
  for (std::size_t i = 0; i < n2; i += 2) acc = _mm256_add_pd(acc, _mm256_loadu_pd(pa + 2 * i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double re = lane[0] + lane[2];
  double im = lane[1] + lane[3];
  if (n2 < n) {
    re += pa[2 * n2];
    im += pa[2 * n2 + 1];
  }
  return {re, im};
}

cplx csum_mul_real_avx2(const cplx* a, const double* w, std::size_t n) {
  const double* pa = re_im(a);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n2 = n - n % 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d vw = _mm256_setr_pd(w[i], w[i], w[i + 1], w[i + 1]);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(pa + 2 * i), vw));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double re = lane[0] + lane[2];
  double im = lane[1] + lane[3];
  if (n2 < n) {
    re += pa[2 * n2] * w[n2];
    im += pa[2 * n2 + 1] * w[n2];
  }
  return {re, im};
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table = {
      cmul_avx2, cmul_conj_avx2, cscale_avx2, cadd_avx2,          abs2_avx2,
      sum_avx2,  dot_avx2,       csum_avx2,   csum_mul_real_avx2,
  };
  return table;
}

}  // namespace qps::simd::detail

#endif  // QPS_SIMD_HAVE_AVX2_TU
