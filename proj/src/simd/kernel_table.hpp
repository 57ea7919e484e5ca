#pragma once

#include <complex>
#include <cstddef>

namespace qps::simd::detail {

using cplx = std::complex<double>;

struct KernelTable {
  void (*cmul)(cplx*, const cplx*, const cplx*, std::size_t);
  void (*cmul_conj)(cplx*, const cplx*, const cplx*, std::size_t);
  void (*cscale)(cplx*, const cplx*, cplx, std::size_t);
  void (*cadd)(cplx*, const cplx*, std::size_t);
  void (*abs2)(double*, const cplx*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  cplx (*csum)(const cplx*, std::size_t);
  cplx (*csum_mul_real)(const cplx*, const double*, std::size_t);
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
#define QPS_SIMD_HAVE_AVX2_TU 1
const KernelTable& avx2_table();
#else
#define QPS_SIMD_HAVE_AVX2_TU 0
#endif

}  // namespace qps::simd::detail
